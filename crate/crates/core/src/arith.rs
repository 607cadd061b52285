//! Small exact integer helpers shared by the combinatorial modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> Option<BigInt> {
    values.into_iter().fold(None, |acc, v| match acc {
        None => Some(v.abs()),
        Some(a) => Some(a.lcm(v)),
    })
}

pub fn to_u64(value: &BigInt, what: &str) -> crate::Result<u64> {
    u64::try_from(value).map_err(|_| crate::Error::Overflow(format!("{what} = {value} does not fit in u64")))
}

pub fn to_i64(value: &BigInt, what: &str) -> crate::Result<i64> {
    i64::try_from(value).map_err(|_| crate::Error::Overflow(format!("{what} = {value} does not fit in i64")))
}
