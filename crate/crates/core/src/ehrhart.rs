//! Lattice-point counting in dilates, Ehrhart polynomials and delta-vectors.
//!
//! Counting scans the integer bounding box of `mP` and classifies each point
//! with the facet inequalities. The scan runs on machine integers (`i64`
//! coordinates, `i128` dot products) and refuses inputs whose facet data does
//! not fit, rather than silently wrapping.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, to_i64, to_u64};
use crate::linalg::IntegerVector;
use crate::polytope::{Location, Polytope};
use crate::{Error, Result};

/// `|mP ∩ Z^d|` and `|∂(mP) ∩ Z^d|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePointCount {
    pub m: u64,
    pub total: u64,
    pub boundary: u64,
}

impl LatticePointCount {
    pub fn interior(&self) -> u64 {
        self.total - self.boundary
    }
}

/// Coefficients of the numerator `δ_0 + δ_1 t + ... + δ_d t^d` of the Ehrhart series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaVector(pub Vec<u64>);

impl DeltaVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().map(|&x| BigInt::from(x)).sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

/// `L_P(m) = sum c_i m^i` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coefficients: Vec<BigRational>,
}

impl EhrhartPolynomial {
    /// `c_0, ..., c_d`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn leading_coefficient(&self) -> &BigRational {
        self.coefficients.last().expect("nonempty")
    }

    pub fn eval(&self, m: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(m));
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "m")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Facet data of a polytope in machine integers.
pub(crate) struct ScanKernel {
    dim: usize,
    normals: Vec<Vec<i64>>,
    offsets: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl ScanKernel {
    pub(crate) fn new(p: &Polytope) -> Result<Self> {
        let normals = p.facets().iter().map(|f| f.normal.to_i64s()).collect::<Result<Vec<_>>>()?;
        let offsets = p
            .facets()
            .iter()
            .map(|f| to_i64(&f.offset, "facet offset"))
            .collect::<Result<Vec<_>>>()?;
        let verts = p.vertices().iter().map(IntegerVector::to_i64s).collect::<Result<Vec<_>>>()?;
        let d = p.dim();
        let lo = (0..d).map(|i| verts.iter().map(|v| v[i]).min().expect("nonempty")).collect();
        let hi = (0..d).map(|i| verts.iter().map(|v| v[i]).max().expect("nonempty")).collect();
        Ok(ScanKernel {
            dim: d,
            normals,
            offsets,
            lo,
            hi,
        })
    }

    pub(crate) fn classify(&self, x: &[i64], m: i64) -> Location {
        let mut boundary = false;
        for (a, &b) in self.normals.iter().zip(&self.offsets) {
            let lhs: i128 = a.iter().zip(x).map(|(&ai, &xi)| ai as i128 * xi as i128).sum();
            let rhs = m as i128 * b as i128;
            if lhs > rhs {
                return Location::Outside;
            }
            boundary |= lhs == rhs;
        }
        if boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Visit every lattice point of `mP` in lexicographic order.
    pub(crate) fn scan(&self, m: u64, mut visit: impl FnMut(&[i64], Location)) -> Result<()> {
        let m = i64::try_from(m).map_err(|_| Error::Overflow(format!("dilation {m}")))?;
        let bound = |x: i64| {
            x.checked_mul(m)
                .ok_or_else(|| Error::Overflow(format!("bounding box of the {m}-th dilate")))
        };
        let lo = self.lo.iter().map(|&x| bound(x)).collect::<Result<Vec<_>>>()?;
        let hi = self.hi.iter().map(|&x| bound(x)).collect::<Result<Vec<_>>>()?;
        let mut x = lo.clone();
        loop {
            let loc = self.classify(&x, m);
            if loc != Location::Outside {
                visit(&x, loc);
            }
            // odometer, last coordinate fastest
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
            }
        }
    }
}

/// Count (and optionally list, in lexicographic order) the lattice points of `mP`.
///
/// For `m = 0` the single point of `0P` is counted as a boundary point.
pub fn count_lattice_points(
    p: &Polytope,
    m: u64,
    want_list: bool,
) -> Result<(LatticePointCount, Option<Vec<IntegerVector>>)> {
    let kernel = ScanKernel::new(p)?;
    let mut count = LatticePointCount {
        m,
        total: 0,
        boundary: 0,
    };
    let mut list = want_list.then(Vec::new);
    kernel.scan(m, |x, loc| {
        count.total += 1;
        if loc == Location::Boundary {
            count.boundary += 1;
        }
        if let Some(list) = list.as_mut() {
            list.push(IntegerVector::from_i64s(x));
        }
    })?;
    Ok((count, list))
}

/// Lattice points of `mP` that lie on its boundary, in lexicographic order.
pub fn boundary_lattice_points(p: &Polytope, m: u64) -> Result<Vec<IntegerVector>> {
    let kernel = ScanKernel::new(p)?;
    let mut out = Vec::new();
    kernel.scan(m, |x, loc| {
        if loc == Location::Boundary {
            out.push(IntegerVector::from_i64s(x));
        }
    })?;
    Ok(out)
}

/// `L_P(0), ..., L_P(max_m)`.
pub fn ehrhart_counts(p: &Polytope, max_m: u64) -> Result<Vec<u64>> {
    (0..=max_m)
        .map(|m| count_lattice_points(p, m, false).map(|(c, _)| c.total))
        .collect()
}

/// `δ_i = sum_{j=0..i} (-1)^j C(d+1, j) L_P(i-j)` for `i = 0..d`.
pub fn delta_vector(p: &Polytope) -> Result<DeltaVector> {
    let d = p.dim();
    let counts = ehrhart_counts(p, d as u64)?;
    let mut delta = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let value: BigInt = (0..=i)
            .map(|j| {
                let term = binomial(d as u64 + 1, j as u64) * BigInt::from(counts[i - j]);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        if value.is_negative() {
            return Err(Error::InternalInconsistency(format!(
                "δ_{i} = {value} is negative (lattice counts {counts:?})"
            )));
        }
        delta.push(to_u64(&value, "delta-vector entry")?);
    }
    Ok(DeltaVector(delta))
}

/// Interpolates `L_P` through `m = 0..d` and checks the leading coefficient against `vol(P)`.
pub fn ehrhart_polynomial(p: &Polytope) -> Result<EhrhartPolynomial> {
    let d = p.dim();
    let counts = ehrhart_counts(p, d as u64)?;
    let mut coefficients = vec![BigRational::zero(); d + 1];
    for (j, &y) in counts.iter().enumerate() {
        // basis polynomial prod_{k != j} (m - k) / (j - k)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for k in (0..=d).filter(|&k| k != j) {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigRational::from_integer(BigInt::from(k));
            }
            basis = next;
            denom *= BigInt::from(j as i64 - k as i64);
        }
        let scale = BigRational::new(BigInt::from(y), denom);
        for (c, b) in coefficients.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    let poly = EhrhartPolynomial { coefficients };
    let expected = BigRational::new(p.normalized_volume(), factorial(d as u64));
    if poly.leading_coefficient() != &expected {
        return Err(Error::InternalInconsistency(format!(
            "Ehrhart leading coefficient {} differs from vol(P) = {expected}",
            poly.leading_coefficient()
        )));
    }
    Ok(poly)
}

/// `sum δ_k = d! vol(P)`, with both sides computed independently.
pub fn check_volume_identity(p: &Polytope) -> Result<bool> {
    Ok(delta_vector(p)?.sum() == p.normalized_volume())
}
