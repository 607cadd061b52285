//! Reflexivity and smoothness predicates, plus the equivalence suites that
//! tie them to delta-vectors, h-vectors and volumes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::ehrhart::{delta_vector, DeltaVector};
use crate::linalg::{is_unimodular_basis, primitive_vector, IntegerVector};
use crate::polytope::{h_from_f, HVector, Polytope};
use crate::{Error, Result};

/// Vertices of `P^∨ = {u : <u, v> <= 1 for all v in P}`, one per facet of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolytope {
    pub vertices: Vec<Vec<BigRational>>,
}

impl DualPolytope {
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(BigRational::is_integer)
    }

    /// The dual as a lattice polytope, when it is one.
    pub fn to_lattice_polytope(&self) -> Option<Result<Polytope>> {
        if !self.is_lattice() {
            return None;
        }
        let d = self.vertices.first().map_or(0, Vec::len);
        let pts = self
            .vertices
            .iter()
            .map(|v| IntegerVector::new(v.iter().map(BigRational::to_integer).collect()))
            .collect();
        Some(Polytope::new(d, pts))
    }
}

/// Dual of a polytope with the origin in its interior: the facet `<a, x> <= b`
/// contributes the dual vertex `a / b`.
pub fn dual_polytope(p: &Polytope) -> Result<DualPolytope> {
    if !p.has_interior_origin() {
        return Err(Error::Precondition("the dual needs the origin in the strict interior".into()));
    }
    let vertices = p
        .facets()
        .iter()
        .map(|f| {
            f.normal
                .entries()
                .iter()
                .map(|a| BigRational::new(a.clone(), f.offset.clone()))
                .collect()
        })
        .collect();
    Ok(DualPolytope { vertices })
}

/// Origin in the interior and every facet at lattice distance one from it.
/// Polytopes without an interior origin are simply not reflexive.
pub fn is_reflexive(p: &Polytope) -> bool {
    p.has_interior_origin() && p.facets().iter().all(|f| f.offset.is_one())
}

/// The three reflexivity criteria, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexivityReport {
    pub has_interior_origin: bool,
    pub dual_is_lattice: bool,
    /// `sum_F det F == d! vol(P)`, i.e. `d vol(P) = vol(∂P)`.
    pub volume_identity_holds: bool,
    pub palindromic: bool,
    pub verdicts_agree: bool,
    pub delta: DeltaVector,
    pub normalized_volume: BigInt,
    pub normalized_boundary_volume: BigInt,
}

pub fn check_reflexive_equivalences(p: &Polytope) -> Result<ReflexivityReport> {
    let dual = dual_polytope(p)?;
    let dual_is_lattice = dual.is_lattice();
    let normalized_volume = p.normalized_volume();
    let normalized_boundary_volume = p.normalized_boundary_volume();
    let volume_identity_holds = normalized_boundary_volume == normalized_volume;
    let delta = delta_vector(p)?;
    let palindromic = delta.is_palindromic();
    Ok(ReflexivityReport {
        has_interior_origin: true,
        dual_is_lattice,
        volume_identity_holds,
        palindromic,
        verdicts_agree: dual_is_lattice == volume_identity_holds && volume_identity_holds == palindromic,
        delta,
        normalized_volume,
        normalized_boundary_volume,
    })
}

/// Simplicial, reflexive, and the vertices of every facet form a basis of `Z^d`.
pub fn is_smooth_fano(p: &Polytope) -> bool {
    p.is_simplicial() && is_reflexive(p) && facets_are_unimodular(p)
}

fn facets_are_unimodular(p: &Polytope) -> bool {
    p.facets()
        .iter()
        .all(|f| is_unimodular_basis(&p.facet_vertices(f), p.dim()).unwrap_or(false))
}

/// Every vertex cone `cone(P - v)` is smooth: the primitive edge directions at
/// `v` form a basis of `Z^d`.
///
/// Only simplicial inputs are accepted. A vertex with more than `d` incident
/// edges has a non-simplicial cone, which is reported as `false`.
pub fn is_smooth_vertex_cones(p: &Polytope) -> Result<bool> {
    let edges = p.edges()?;
    let d = p.dim();
    for (i, v) in p.vertices().iter().enumerate() {
        let directions = edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(&p.vertices()[b] - v),
                (_, true) => Some(&p.vertices()[a] - v),
                _ => None,
            })
            .map(|w| primitive_vector(&w))
            .collect::<Result<Vec<_>>>()?;
        if directions.len() != d || !is_unimodular_basis(&directions, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three smooth Fano criteria for a reflexive simplicial polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothFanoReport {
    pub is_simplicial: bool,
    pub is_reflexive: bool,
    /// Every facet's vertices form a basis of `Z^d`.
    pub facet_basis_ok: bool,
    pub h_equals_delta: bool,
    /// `f_{d-1} == d! vol(P)`.
    pub facets_equal_volume: bool,
    pub verdicts_agree: bool,
    pub h: Option<HVector>,
    pub delta: Option<DeltaVector>,
    /// Set when the suite did not run because the input is not reflexive and simplicial.
    pub note: Option<String>,
}

/// Evaluates the three criteria on a reflexive simplicial polytope and insists
/// that they agree. Other inputs get a short-circuited report with a note.
pub fn check_smooth_fano_equivalences(p: &Polytope) -> Result<SmoothFanoReport> {
    let is_simplicial = p.is_simplicial();
    let reflexive = is_reflexive(p);
    if !is_simplicial || !reflexive {
        let why = match (is_simplicial, reflexive) {
            (false, false) => "not simplicial and not reflexive",
            (false, true) => "not simplicial",
            _ => "not reflexive",
        };
        return Ok(SmoothFanoReport {
            is_simplicial,
            is_reflexive: reflexive,
            facet_basis_ok: false,
            h_equals_delta: false,
            facets_equal_volume: false,
            verdicts_agree: true,
            h: None,
            delta: None,
            note: Some(format!("equivalence suite skipped: {why}")),
        });
    }
    let facet_basis_ok = facets_are_unimodular(p);
    let f = p.f_vector()?;
    let h = h_from_f(&f, p.dim())?;
    let delta = delta_vector(p)?;
    let h_equals_delta = h.as_slice() == delta.as_slice();
    let facet_count = BigInt::from(*f.as_slice().last().expect("d >= 1"));
    let facets_equal_volume = facet_count == p.normalized_volume();
    if !(facet_basis_ok == h_equals_delta && h_equals_delta == facets_equal_volume) {
        return Err(Error::TheoremViolation(format!(
            "smooth Fano criteria disagree: facet bases {facet_basis_ok}, h = δ {h_equals_delta} (h = {h}, δ = {delta}), \
             f_(d-1) = d! vol {facets_equal_volume}"
        )));
    }
    Ok(SmoothFanoReport {
        is_simplicial,
        is_reflexive: reflexive,
        facet_basis_ok,
        h_equals_delta,
        facets_equal_volume,
        verdicts_agree: true,
        h: Some(h),
        delta: Some(delta),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::HVector;
    use crate::shapes::*;
    use std::collections::BTreeSet;

    fn int_points(d: &DualPolytope) -> BTreeSet<Vec<i64>> {
        d.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        assert!(x.is_integer());
                        i64::try_from(x.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn dual_examples() {
        let d = dual_polytope(&cross_polytope(2)).unwrap();
        assert_eq!(int_points(&d), BTreeSet::from([vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]));
        let d = dual_polytope(&square()).unwrap();
        assert_eq!(int_points(&d), BTreeSet::from([vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]));
        // edges of conv{(1,0),(0,1),(-1,-1)}: x + y <= 1, -2x + y <= 1, x - 2y <= 1
        let d = dual_polytope(&reflexive_triangle()).unwrap();
        assert_eq!(int_points(&d), BTreeSet::from([vec![1, 1], vec![-2, 1], vec![1, -2]]));
    }

    #[test]
    fn dual_requires_interior_origin() {
        let p = Polytope::from_i64_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(dual_polytope(&p), Err(Error::Precondition(_))));
        assert!(!is_reflexive(&p));
    }

    #[test]
    fn duality_is_an_involution_on_reflexive_polytopes() {
        for p in [cross_polytope(3), hexagon(), reflexive_triangle(), cube(3)] {
            let dual = dual_polytope(&p).unwrap().to_lattice_polytope().unwrap().unwrap();
            assert!(is_reflexive(&dual));
            let back = dual_polytope(&dual).unwrap().to_lattice_polytope().unwrap().unwrap();
            let set = |q: &Polytope| q.vertices().iter().cloned().collect::<BTreeSet<_>>();
            assert_eq!(set(&back), set(&p));
        }
    }

    #[test]
    fn reflexive_examples() {
        assert!(is_reflexive(&cross_polytope(2)));
        assert!(is_reflexive(&hexagon()));
        let p = Polytope::from_i64_points(2, &[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]]).unwrap();
        assert!(!is_reflexive(&p));
        assert!(!dual_polytope(&p).unwrap().is_lattice());
    }

    #[test]
    fn reflexive_equivalence_examples() {
        for p in [cross_polytope(2), hexagon()] {
            let r = check_reflexive_equivalences(&p).unwrap();
            assert!(r.dual_is_lattice && r.volume_identity_holds && r.palindromic && r.verdicts_agree);
        }
        // L = (1, 7, ...) and area 4: δ = (1, 4, 3); boundary volume 4 vs 8
        let p = Polytope::from_i64_points(2, &[&[1, 0], &[-1, 0], &[0, 2], &[0, -2]]).unwrap();
        let r = check_reflexive_equivalences(&p).unwrap();
        assert!(!r.dual_is_lattice && !r.volume_identity_holds && !r.palindromic);
        assert!(r.verdicts_agree);
        assert_eq!(r.delta, DeltaVector(vec![1, 4, 3]));
    }

    #[test]
    fn smooth_fano_examples() {
        for d in 1..=4 {
            assert!(is_smooth_fano(&cross_polytope(d)));
        }
        assert!(is_smooth_fano(&hexagon()));
        assert!(!is_smooth_fano(&square()));
        assert!(!is_smooth_fano(&cube(3)));
    }

    #[test]
    fn vertex_cone_examples() {
        // at (1,0) the diamond's edge directions (-1,1), (-1,-1) span index 2
        assert!(!is_smooth_vertex_cones(&cross_polytope(2)).unwrap());
        assert!(is_smooth_vertex_cones(&square()).unwrap());
        let unit = Polytope::from_i64_points(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(is_smooth_vertex_cones(&unit).unwrap());
        assert!(is_smooth_vertex_cones(&hexagon()).unwrap());
        // the octahedron has four edges at each vertex
        assert!(!is_smooth_vertex_cones(&cross_polytope(3)).unwrap());
        let big = Polytope::from_i64_points(2, &[&[0, 0], &[2, 0], &[0, 1]]).unwrap();
        assert!(!is_smooth_vertex_cones(&big).unwrap());
        assert!(matches!(is_smooth_vertex_cones(&cube(3)), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn smooth_fano_equivalence_examples() {
        let r = check_smooth_fano_equivalences(&cross_polytope(3)).unwrap();
        assert!(r.facet_basis_ok && r.h_equals_delta && r.facets_equal_volume);
        assert_eq!(r.h, Some(HVector(vec![1, 3, 3, 1])));

        let r = check_smooth_fano_equivalences(&hexagon()).unwrap();
        assert!(r.facet_basis_ok && r.h_equals_delta && r.facets_equal_volume);
        assert_eq!(r.h, Some(HVector(vec![1, 4, 1])));

        let r = check_smooth_fano_equivalences(&square()).unwrap();
        assert!(!r.facet_basis_ok && !r.h_equals_delta && !r.facets_equal_volume);
        assert_eq!(r.h, Some(HVector(vec![1, 2, 1])));
        assert_eq!(r.delta, Some(DeltaVector(vec![1, 6, 1])));

        let r = check_smooth_fano_equivalences(&cube(3)).unwrap();
        assert!(r.note.is_some());
    }
}
