//! Face-count bounds for simplicial polytopes and volume bounds for smooth
//! Fano polytopes.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::arith::{binomial, factorial, to_u64};
use crate::ehrhart::{boundary_lattice_points, delta_vector, DeltaVector};
use crate::linalg::{unimodular_inverse, IntegerMatrix, IntegerVector};
use crate::polytope::{FVector, Polytope};
use crate::reflexive::{is_reflexive, is_smooth_fano};
use crate::{Error, Result};

fn check_nd(n: u64, d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension {d} < 2")));
    }
    if n <= d {
        return Err(Error::Domain(format!("{n} vertices cannot span a {d}-polytope")));
    }
    Ok(())
}

/// Number of facets of the cyclic polytope `C(n, d)`.
pub fn cyclic_facet_count(n: u64, d: u64) -> Result<BigInt> {
    check_nd(n, d)?;
    Ok(binomial(n - d.div_ceil(2), n - d) + binomial(n - (d + 2) / 2, n - d))
}

/// f-vector of a stacked `d`-polytope with `n` vertices.
pub fn stacked_f_vector(n: u64, d: u64) -> Result<FVector> {
    check_nd(n, d)?;
    let nb = BigInt::from(n);
    let mut f = Vec::with_capacity(d as usize);
    for k in 0..d {
        let value = if k == d - 1 {
            BigInt::from(d - 1) * &nb - BigInt::from((d + 1) * (d - 2))
        } else {
            binomial(d, k) * &nb - binomial(d + 1, k + 1) * BigInt::from(k)
        };
        f.push(to_u64(&value, "stacked face count")?);
    }
    Ok(FVector(f))
}

/// Upper bound `C(n - d + i - 1, i)` on `h_i` of a simplicial `d`-polytope with `n` vertices.
pub fn mcmullen_h_bound(n: u64, d: u64, i: u64) -> Result<BigInt> {
    if i > d {
        return Err(Error::Domain(format!("index {i} exceeds dimension {d}")));
    }
    if n <= d {
        return Err(Error::Domain(format!("{n} vertices cannot span a {d}-polytope")));
    }
    Ok(binomial(n - d + i - 1, i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodalityReport {
    pub delta: DeltaVector,
    /// `|∂P ∩ Z^d|`.
    pub n: u64,
    pub unimodal: bool,
    /// `δ_i <= C(n - d + i - 1, i)` for `i <= d/2`.
    pub mcmullen_ok: bool,
    /// The bounds are only guaranteed for smooth Fano inputs.
    pub smooth_fano: bool,
}

fn is_unimodal(xs: &[u64]) -> bool {
    let peak = xs.iter().position_max().unwrap_or(0);
    xs[..=peak].windows(2).all(|w| w[0] <= w[1]) && xs[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// Unimodality of the delta-vector and the McMullen bounds on its first half.
pub fn check_delta_unimodal(p: &Polytope) -> Result<UnimodalityReport> {
    let d = p.dim() as u64;
    let delta = delta_vector(p)?;
    let n = boundary_lattice_points(p, 1)?.len() as u64;
    let mut mcmullen_ok = true;
    for i in 0..=d / 2 {
        mcmullen_ok &= BigInt::from(delta.as_slice()[i as usize]) <= mcmullen_h_bound(n, d, i)?;
    }
    Ok(UnimodalityReport {
        unimodal: is_unimodal(delta.as_slice()),
        delta,
        n,
        mcmullen_ok,
        smooth_fano: is_smooth_fano(p),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// `|∂P ∩ Z^d|`.
    pub n: u64,
    /// `(d-1)n - (d+1)(d-2)`.
    pub lower: BigInt,
    /// `f_{d-1}` of the cyclic polytope with `n` vertices.
    pub upper: BigInt,
    /// Normalized volume.
    pub actual: BigInt,
    pub within: bool,
    /// The lower bound is guaranteed for reflexive inputs.
    pub reflexive: bool,
    /// Both bounds are guaranteed for smooth Fano inputs.
    pub smooth_fano: bool,
}

/// Lower and upper volume bounds in terms of the number of boundary lattice points.
pub fn check_volume_sandwich(p: &Polytope) -> Result<BoundsReport> {
    let d = p.dim() as u64;
    if d < 2 {
        return Err(Error::Domain(format!("dimension {d} < 2")));
    }
    let n = boundary_lattice_points(p, 1)?.len() as u64;
    let lower = BigInt::from(d - 1) * BigInt::from(n) - BigInt::from((d + 1) * (d - 2));
    let upper = cyclic_facet_count(n, d)?;
    let actual = p.normalized_volume();
    Ok(BoundsReport {
        n,
        within: lower <= actual && actual <= upper,
        lower,
        upper,
        actual,
        reflexive: is_reflexive(p),
        smooth_fano: is_smooth_fano(p),
    })
}

/// `2 C(⌊5d/2⌋, 2d)`, a dimension-only volume bound for smooth Fano polytopes.
pub fn casagrande_volume_bound(d: u64) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension {d} < 2")));
    }
    Ok(2 * binomial(5 * d / 2, 2 * d))
}

/// `coefficient * radicand^(1/index)` with positive rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoot {
    pub coefficient: BigRational,
    pub radicand: BigRational,
    pub index: u64,
}

impl RationalRoot {
    /// The exact value when the radicand is a perfect power.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.index == 1 {
            return Some(&self.coefficient * &self.radicand);
        }
        let k = u32::try_from(self.index).ok()?;
        let num = self.radicand.numer().nth_root(k);
        let den = self.radicand.denom().nth_root(k);
        (Pow::pow(&num, k) == *self.radicand.numer() && Pow::pow(&den, k) == *self.radicand.denom())
            .then(|| &self.coefficient * BigRational::new(num, den))
    }

    /// Exact comparison with a positive rational, by raising both sides to `index`.
    pub fn cmp_rational(&self, x: &BigRational) -> std::cmp::Ordering {
        let k = self.index as usize;
        let lhs = Pow::pow(&self.coefficient, k) * &self.radicand;
        lhs.cmp(&Pow::pow(x, k))
    }
}

impl fmt::Display for RationalRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.to_rational() {
            return write!(f, "{x}");
        }
        if !self.coefficient.is_one() {
            write!(f, "{}*", self.coefficient)?;
        }
        write!(f, "({})^(1/{})", self.radicand, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SondowCheck {
    pub r: BigRational,
    pub s: u64,
    pub lower: RationalRoot,
    /// `C((r+1)s, s)`, the generalized binomial when `(r+1)s` is not an integer.
    pub value: BigRational,
    pub upper: RationalRoot,
    pub holds: bool,
}

/// `x (x-1) ... (x-s+1) / s!`.
fn generalized_binomial(x: &BigRational, s: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..s {
        acc *= x - BigRational::from_integer(BigInt::from(j));
    }
    acc / BigRational::from_integer(factorial(s))
}

/// Checks `(1/4rs) B^s <= C((r+1)s, s) <= B^s` with `B = (r+1)^(r+1) / r^r`.
///
/// For `r = p/q` in lowest terms, `B^s = A^(s/q)` with `A = (r+1)^(p+q) / r^p`,
/// so both comparisons are decided exactly after raising to the `q`-th power.
pub fn sondow_bounds_check(r: &BigRational, s: u64) -> Result<SondowCheck> {
    if *r < BigRational::one() {
        return Err(Error::Domain(format!("r = {r} < 1")));
    }
    if s == 0 {
        return Err(Error::Domain("s must be positive".into()));
    }
    let p = to_u64(r.numer(), "numerator of r")? as usize;
    let q = to_u64(r.denom(), "denominator of r")?;
    let r1 = r + BigRational::one();
    let a = Pow::pow(&r1, p + q as usize) / Pow::pow(r, p);
    let radicand = Pow::pow(&a, s as usize);
    let upper = RationalRoot {
        coefficient: BigRational::one(),
        radicand: radicand.clone(),
        index: q,
    };
    let lower = RationalRoot {
        coefficient: (BigRational::from_integer(BigInt::from(4u64 * s)) * r).recip(),
        radicand,
        index: q,
    };
    let value = generalized_binomial(&(&r1 * BigRational::from_integer(BigInt::from(s))), s);
    let holds = lower.cmp_rational(&value).is_le() && upper.cmp_rational(&value).is_ge();
    Ok(SondowCheck {
        r: r.clone(),
        s,
        lower,
        value,
        upper,
        holds,
    })
}

/// Conjectured sharp bound `½(3 - (-1)^d) 6^⌊d/2⌋` on the normalized volume of
/// a smooth Fano `d`-polytope.
pub fn conjecture_bound(d: u64) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension {d} < 2")));
    }
    let factor = if d.is_multiple_of(2) { 1 } else { 2 };
    Ok(BigInt::from(factor) * Pow::pow(BigInt::from(6), d / 2))
}

/// Vertex count the conjecture predicts for the extremal polytopes, `½(6d + (-1)^d - 1)`.
pub fn conjectured_vertex_count(d: u64) -> u64 {
    if d.is_multiple_of(2) {
        3 * d
    } else {
        3 * d - 1
    }
}

/// Canonical form of a polytope under `GL(d, Z)`.
///
/// Each unimodular facet, with each ordering of its vertices, is mapped onto
/// the standard basis; the sorted list of transformed vertices is a candidate
/// key and the fingerprint is the smallest one. Two polytopes with unimodular
/// facets have equal fingerprints exactly when a unimodular linear map takes
/// one to the other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnimodularFingerprint(pub Vec<IntegerVector>);

/// Largest dimension for which the fingerprint search is attempted.
pub const FINGERPRINT_MAX_DIM: usize = 4;

/// `None` when the dimension exceeds [`FINGERPRINT_MAX_DIM`] or no facet is a
/// lattice basis.
pub fn unimodular_fingerprint(p: &Polytope) -> Option<UnimodularFingerprint> {
    let d = p.dim();
    if d > FINGERPRINT_MAX_DIM {
        return None;
    }
    let mut best: Option<Vec<IntegerVector>> = None;
    for f in p.facets().iter().filter(|f| f.vertex_indices.len() == d) {
        let basis = IntegerMatrix::new(p.facet_vertices(f)).ok()?;
        let Ok(inverse) = unimodular_inverse(&basis) else {
            continue;
        };
        let images: Vec<IntegerVector> = p.vertices().iter().map(|v| inverse.left_apply(v)).collect();
        for perm in (0..d).permutations(d) {
            let mut key: Vec<IntegerVector> = images
                .iter()
                .map(|w| IntegerVector::new(perm.iter().map(|&j| w[j].clone()).collect()))
                .collect();
            key.sort();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.map(UnimodularFingerprint)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotDecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotDecided => "not decided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub claim: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRecord {
    pub dim: u64,
    pub max_normalized_volume: BigInt,
    /// Ids of the polytopes of maximal volume, in dataset order.
    pub attainers: Vec<String>,
    pub bound: BigInt,
    pub attainer_vertex_counts: Vec<usize>,
    pub centrally_symmetric_flags: Vec<bool>,
    pub claims: Vec<ClaimVerdict>,
    /// Dataset entries that are not smooth Fano polytopes of the requested dimension.
    pub skipped: Vec<(String, String)>,
    pub notes: Vec<String>,
}

impl ConjectureRecord {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.verdict == Verdict::Holds)
    }
}

/// Compares the volume maximizers of a smooth Fano dataset with the conjectured
/// extremal polytopes.
///
/// The conjecture's free variable `n` is read as the dimension `d`, and its bound
/// is taken with the factor `½` throughout; both readings are recorded in
/// [`ConjectureRecord::notes`].
pub fn evaluate_conjecture(dataset: &[(String, Polytope)], d: u64) -> Result<ConjectureRecord> {
    let bound = conjecture_bound(d)?;
    let mut skipped = Vec::new();
    let mut valid = Vec::new();
    for (id, p) in dataset {
        if p.dim() as u64 != d {
            skipped.push((id.clone(), format!("dimension {} instead of {d}", p.dim())));
        } else if !is_smooth_fano(p) {
            skipped.push((id.clone(), "not smooth Fano".to_string()));
        } else {
            valid.push((id, p, p.normalized_volume()));
        }
    }
    let max = valid
        .iter()
        .map(|(_, _, v)| v.clone())
        .max()
        .ok_or_else(|| Error::Degenerate("no smooth Fano polytope of the requested dimension".into()))?;
    // one representative per GL(d, Z) class
    let mut classes = BTreeSet::new();
    let mut duplicates = Vec::new();
    let mut undecided = false;
    let top: Vec<_> = valid
        .iter()
        .filter(|(_, _, v)| *v == max)
        .filter(|(id, p, _)| match unimodular_fingerprint(p) {
            Some(fp) => {
                let fresh = classes.insert(fp);
                if !fresh {
                    duplicates.push((*id).clone());
                }
                fresh
            }
            None => {
                undecided = true;
                true
            }
        })
        .collect();
    let attainers: Vec<String> = top.iter().map(|(id, _, _)| (*id).clone()).collect();
    let vertex_counts: Vec<usize> = top.iter().map(|(_, p, _)| p.vertices().len()).collect();
    let symmetric: Vec<bool> = top.iter().map(|(_, p, _)| p.is_centrally_symmetric()).collect();

    let holds = |b: bool| if b { Verdict::Holds } else { Verdict::Fails };
    let odd = d % 2 == 1;
    let expected_count = if odd { 2 } else { 1 };
    let f0 = conjectured_vertex_count(d);
    let n_symmetric = symmetric.iter().filter(|&&s| s).count();
    let claims = vec![
        ClaimVerdict {
            claim: "bound".into(),
            verdict: holds(max <= bound),
            detail: format!("max {max} vs bound {bound}"),
        },
        ClaimVerdict {
            claim: "sharpness".into(),
            verdict: holds(max == bound),
            detail: format!("max {max} vs bound {bound}"),
        },
        ClaimVerdict {
            claim: "attainer count".into(),
            verdict: if undecided {
                Verdict::NotDecided
            } else {
                holds(max == bound && attainers.len() == expected_count)
            },
            detail: if undecided {
                format!("equivalence test unavailable above dimension {FINGERPRINT_MAX_DIM}")
            } else {
                format!("{} inequivalent attainer(s), expected {expected_count}", attainers.len())
            },
        },
        ClaimVerdict {
            claim: "attainer vertex count".into(),
            verdict: holds(vertex_counts.iter().all(|&n| n as u64 == f0)),
            detail: format!("f_0 {vertex_counts:?}, expected {f0}"),
        },
        ClaimVerdict {
            claim: "central symmetry".into(),
            verdict: holds(n_symmetric == 1),
            detail: format!("{n_symmetric} of {} attainer(s) centrally symmetric, expected 1", symmetric.len()),
        },
    ];

    let mut notes = vec!["the conjecture's n is read as the dimension d".to_string()];
    if odd {
        notes.push("bound taken as ½(3-(-1)^d)·6^⌊d/2⌋; the even-case sentence omits the ½".into());
        notes.push("\"two unimodularly equivalent\" is read as two polytopes that are not equivalent to each other".into());
    } else {
        notes.push(format!(
            "bound taken as ½(3-(-1)^d)·6^⌊d/2⌋ = {bound}; the even-case sentence omits the ½, which would give {}",
            2 * &bound
        ));
    }
    if !duplicates.is_empty() {
        notes.push(format!("equivalent copies of an attainer ignored: {}", duplicates.join(", ")));
    }
    if !skipped.is_empty() {
        notes.push(format!("{} dataset entries skipped", skipped.len()));
    }
    Ok(ConjectureRecord {
        dim: d,
        max_normalized_volume: max,
        attainers,
        bound,
        attainer_vertex_counts: vertex_counts,
        centrally_symmetric_flags: symmetric,
        claims,
        skipped,
        notes,
    })
}
