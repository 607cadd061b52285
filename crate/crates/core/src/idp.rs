//! Integer decomposition property, checked level by level.
//!
//! `S_1 = P ∩ Z^d` and `S_c = S_{c-1} + S_1`. Level `c` passes when `S_c`
//! covers every lattice point of `cP`; the sumset is always contained in `cP`
//! by convexity.

use std::collections::HashSet;

use crate::ehrhart::ScanKernel;
use crate::linalg::IntegerVector;
use crate::polytope::{Location, Polytope};
use crate::{Error, Result};

type Point = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdpLevel {
    pub c: u64,
    /// `|cP ∩ Z^d|`.
    pub points_checked: u64,
    /// Lattice points of `cP` that are not sums of `c` points of `P`, in lexicographic order.
    pub failures: Vec<IntegerVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdpReport {
    pub c_max: u64,
    pub per_level: Vec<IdpLevel>,
    pub holds_up_to_c_max: bool,
}

fn lattice_points(kernel: &ScanKernel, m: u64) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    kernel.scan(m, |x, _| out.push(x.to_vec()))?;
    Ok(out)
}

fn add(a: &[i64], b: &[i64]) -> Result<Point> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or_else(|| Error::Overflow("sumset coordinate".into())))
        .collect()
}

/// `S_0, ..., S_c_max` as hash sets, with `S_0 = {0}`.
fn sumsets(base: &[Point], dim: usize, c_max: u64) -> Result<Vec<HashSet<Point>>> {
    let mut levels = vec![HashSet::from([vec![0; dim]])];
    for _ in 0..c_max {
        let prev = levels.last().expect("nonempty");
        let mut next = HashSet::with_capacity(prev.len() * 2);
        for s in prev {
            for x in base {
                next.insert(add(s, x)?);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Checks the decomposition property for dilations `1..=c_max`. Every level is
/// evaluated even after a failure.
pub fn idp_check(p: &Polytope, c_max: u64) -> Result<IdpReport> {
    if c_max == 0 {
        return Err(Error::Precondition("c_max must be at least 1".into()));
    }
    let kernel = ScanKernel::new(p)?;
    let base = lattice_points(&kernel, 1)?;
    let levels = sumsets(&base, p.dim(), c_max)?;
    let mut per_level = Vec::with_capacity(c_max as usize);
    for c in 1..=c_max {
        let reached = &levels[c as usize];
        let mut points_checked = 0;
        let mut failures = Vec::new();
        kernel.scan(c, |x, _| {
            points_checked += 1;
            if !reached.contains(x) {
                failures.push(IntegerVector::from_i64s(x));
            }
        })?;
        per_level.push(IdpLevel {
            c,
            points_checked,
            failures,
        });
    }
    let holds_up_to_c_max = per_level.iter().all(|l| l.failures.is_empty());
    Ok(IdpReport {
        c_max,
        per_level,
        holds_up_to_c_max,
    })
}

/// Writes `z` as a sum of `c` lattice points of `P`, or returns `None` if no
/// such decomposition exists.
///
/// The witness is chosen greedily: `x_1` is the lexicographically smallest
/// point of `P` for which `z - x_1` still decomposes into `c - 1` points, and
/// so on.
pub fn decompose_point(p: &Polytope, z: &IntegerVector, c: u64) -> Result<Option<Vec<IntegerVector>>> {
    if c == 0 {
        return Err(Error::Precondition("c must be at least 1".into()));
    }
    if z.dim() != p.dim() {
        return Err(Error::Dimension(format!("point of dimension {} for a {}-polytope", z.dim(), p.dim())));
    }
    if p.contains_point(z, c)? == Location::Outside {
        return Err(Error::Precondition(format!("{z} is not in the {c}-th dilate")));
    }
    let kernel = ScanKernel::new(p)?;
    let base = lattice_points(&kernel, 1)?;
    let levels = sumsets(&base, p.dim(), c - 1)?;
    let mut rest = z.to_i64s()?;
    let mut parts = Vec::with_capacity(c as usize);
    for k in (0..c as usize).rev() {
        // base is in lexicographic order, so the first admissible point is the smallest
        let next = base.iter().find_map(|x| {
            let r: Point = rest.iter().zip(x).map(|(a, b)| a - b).collect();
            levels[k].contains(&r).then(|| (x.clone(), r))
        });
        match next {
            Some((x, r)) => {
                parts.push(IntegerVector::from_i64s(&x));
                rest = r;
            }
            None => return Ok(None),
        }
    }
    debug_assert!(parts.len() as u64 == c);
    debug_assert!(parts.iter().fold(IntegerVector::zero(p.dim()), |acc, x| &acc + x) == *z);
    debug_assert!(parts.iter().all(|x| p.contains_point(x, 1).is_ok_and(|l| l != Location::Outside)));
    Ok(Some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::*;

    fn v(x: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(x)
    }

    #[test]
    fn cross_polytope_levels() {
        let r = idp_check(&cross_polytope(2), 3).unwrap();
        assert!(r.holds_up_to_c_max);
        let counts: Vec<u64> = r.per_level.iter().map(|l| l.points_checked).collect();
        assert_eq!(counts, vec![5, 13, 25]);
    }

    #[test]
    fn hexagon_and_square() {
        assert!(idp_check(&hexagon(), 3).unwrap().holds_up_to_c_max);
        let r = idp_check(&square(), 2).unwrap();
        assert!(r.holds_up_to_c_max);
        assert_eq!(r.per_level[1].points_checked, 25);
    }

    #[test]
    fn reeve_like_simplex_fails() {
        // conv{0, e1, e2, (1,1,3)} has no interior or extra lattice points but volume 3
        let p = Polytope::from_i64_points(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]).unwrap();
        let r = idp_check(&p, 3).unwrap();
        assert!(!r.holds_up_to_c_max);
        assert!(r.per_level[0].failures.is_empty());
        assert!(!r.per_level[1].failures.is_empty());
        assert_eq!(r.per_level.len(), 3);
    }

    #[test]
    fn zero_levels_rejected() {
        assert!(matches!(idp_check(&square(), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn decompose_examples() {
        let p = cross_polytope(2);
        let w = decompose_point(&p, &v(&[1, 1]), 2).unwrap().unwrap();
        assert_eq!(w, vec![v(&[0, 1]), v(&[1, 0])]);
        let w = decompose_point(&p, &v(&[2, 0]), 2).unwrap().unwrap();
        assert_eq!(w, vec![v(&[1, 0]), v(&[1, 0])]);
        let w = decompose_point(&p, &v(&[0, 0]), 3).unwrap().unwrap();
        assert_eq!(w.iter().fold(v(&[0, 0]), |a, x| &a + x), v(&[0, 0]));
        assert_eq!(w.len(), 3);
        assert!(matches!(decompose_point(&p, &v(&[2, 1]), 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn decompose_absent() {
        let p = Polytope::from_i64_points(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]).unwrap();
        let r = idp_check(&p, 2).unwrap();
        let z = &r.per_level[1].failures[0];
        assert_eq!(decompose_point(&p, z, 2).unwrap(), None);
    }
}
