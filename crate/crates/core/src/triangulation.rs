//! Boundary and cone triangulations of lattice polytopes.
//!
//! A boundary triangulation either reuses the boundary complex of a
//! simplicial polytope or triangulates every facet with all of its lattice
//! points: the facet is first pulled at its vertices in lexicographic order,
//! then each remaining lattice point is inserted by a stellar subdivision, also
//! in lexicographic order. Both steps only depend on the global point order, so
//! the per-facet triangulations agree on shared faces.
//!
//! Simplices are never tested pairwise for overlap. Cone triangulations are
//! star-shaped from the origin and are certified by the exact volume
//! partition `sum det σ = d! vol(P)`; boundary triangulations are certified
//! facet by facet against the facet volumes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::lcm_all;
use crate::ehrhart::{boundary_lattice_points, delta_vector, DeltaVector};
use crate::linalg::{determinant, HyperplaneChart, IntegerMatrix, IntegerVector};
use crate::polytope::{f_vector_of_complex, h_from_f, FVector, HVector, Location, Polytope};
use crate::reflexive::{is_reflexive, is_smooth_fano};
use crate::{Error, Result};

/// A lattice simplex with its normalized volume (sublattice index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSimplex {
    pub vertices: Vec<IntegerVector>,
    /// Normalized volume, in the hyperplane lattice for boundary simplices.
    pub det: BigInt,
    /// Index into [`Polytope::facets`] of the facet this simplex lies on or cones over.
    pub facet: usize,
}

impl LatticeSimplex {
    pub fn is_unimodular(&self) -> bool {
        self.det.is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangulationKind {
    /// `(d-1)`-simplices covering `∂P`.
    Boundary,
    /// `d`-simplices `conv(0 ∪ F)` covering `P`.
    FullCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub dim: usize,
    pub kind: TriangulationKind,
    pub simplices: Vec<LatticeSimplex>,
    pub vertex_set: BTreeSet<IntegerVector>,
}

impl Triangulation {
    fn new(dim: usize, kind: TriangulationKind, simplices: Vec<LatticeSimplex>) -> Self {
        let vertex_set = simplices.iter().flat_map(|s| s.vertices.iter().cloned()).collect();
        Triangulation {
            dim,
            kind,
            simplices,
            vertex_set,
        }
    }

    pub fn total_det(&self) -> BigInt {
        self.simplices.iter().map(|s| &s.det).sum()
    }

    /// Face numbers of the simplicial complex (boundary kind only).
    pub fn f_vector(&self) -> Result<FVector> {
        if self.kind != TriangulationKind::Boundary {
            return Err(Error::Precondition("f-vector is defined for boundary triangulations".into()));
        }
        let ids: HashMap<&IntegerVector, usize> = self.vertex_set.iter().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(f_vector_of_complex(
            self.dim,
            self.simplices.iter().map(|s| s.vertices.iter().map(|v| ids[v]).collect()),
        ))
    }
}

/// `|det|` of a `(d-1)`-simplex measured in chart coordinates of its hyperplane.
fn chart_det(chart: &HyperplaneChart, vertices: &[IntegerVector]) -> BigInt {
    let coords: Vec<IntegerVector> = vertices.iter().map(|v| chart.coords(v)).collect();
    let rows: Vec<IntegerVector> = coords[1..].iter().map(|c| c - &coords[0]).collect();
    let k = coords[0].dim();
    let m = if rows.is_empty() {
        IntegerMatrix::zeros(0, 0)
    } else {
        IntegerMatrix::new(rows).expect("rows share a dimension")
    };
    debug_assert_eq!(m.nrows(), k);
    determinant(&m).expect("square").abs()
}

/// Triangulation of `∂P`.
///
/// With `use_all_boundary_points == false` this is the boundary complex of a
/// simplicial polytope. With `true`, every lattice point of `∂P` becomes a
/// vertex; the polytope must be reflexive.
pub fn boundary_triangulation(p: &Polytope, use_all_boundary_points: bool) -> Result<Triangulation> {
    let d = p.dim();
    let mut simplices = Vec::new();
    if !use_all_boundary_points {
        if !p.is_simplicial() {
            return Err(Error::UnsupportedShape(
                "the boundary complex is a triangulation only for simplicial polytopes".into(),
            ));
        }
        for (fi, f) in p.facets().iter().enumerate() {
            let verts = p.facet_vertices(f);
            let chart = HyperplaneChart::new(&f.normal, verts[0].clone())?;
            simplices.push(LatticeSimplex {
                det: chart_det(&chart, &verts),
                vertices: verts,
                facet: fi,
            });
        }
        return Ok(Triangulation::new(d, TriangulationKind::Boundary, simplices));
    }

    if !is_reflexive(p) {
        return Err(Error::Precondition(
            "triangulating with all boundary lattice points requires a reflexive polytope".into(),
        ));
    }
    let boundary = boundary_lattice_points(p, 1)?;
    for (fi, f) in p.facets().iter().enumerate() {
        let on_facet: Vec<IntegerVector> = boundary.iter().filter(|x| f.normal.dot(x) == f.offset).cloned().collect();
        let chart = HyperplaneChart::new(&f.normal, on_facet[0].clone())?;
        let coords: Vec<IntegerVector> = on_facet.iter().map(|x| chart.coords(x)).collect();
        let mut facet_total = BigInt::zero();
        for cell in pulling_triangulation(d - 1, &coords)? {
            let verts: Vec<IntegerVector> = cell.iter().map(|&i| on_facet[i].clone()).collect();
            let det = chart_det(&chart, &verts);
            facet_total += &det;
            simplices.push(LatticeSimplex {
                vertices: verts,
                det,
                facet: fi,
            });
        }
        if facet_total != p.facet_normalized_volumes()[fi] {
            return Err(Error::InternalInconsistency(format!(
                "facet {fi}: simplices cover volume {facet_total}, facet has {}",
                p.facet_normalized_volumes()[fi]
            )));
        }
    }
    Ok(Triangulation::new(d, TriangulationKind::Boundary, simplices))
}

/// Triangulates a full-dimensional point configuration in `Z^k` using every
/// point as a vertex. Point indices define the pulling order. Returns cells as
/// sorted index lists.
fn pulling_triangulation(k: usize, coords: &[IntegerVector]) -> Result<Vec<Vec<usize>>> {
    let ids: Vec<usize> = (0..coords.len()).collect();
    let mut cells = pull_vertices(k, coords, &ids)?;
    let used: BTreeSet<usize> = cells.iter().flatten().copied().collect();
    for p in (0..coords.len()).filter(|i| !used.contains(i)) {
        cells = stellar_subdivision(cells, coords, p)?;
    }
    for c in cells.iter_mut() {
        c.sort_unstable();
    }
    cells.sort();
    Ok(cells)
}

/// Pulling triangulation of `conv(points)` on its vertices only, pulling the
/// vertex with the smallest id first and recursing into the facets that miss it.
fn pull_vertices(k: usize, coords: &[IntegerVector], ids: &[usize]) -> Result<Vec<Vec<usize>>> {
    match k {
        0 => return Ok(vec![vec![ids[0]]]),
        1 => {
            let lo = ids.iter().min_by_key(|&&i| &coords[i][0]).expect("nonempty");
            let hi = ids.iter().max_by_key(|&&i| &coords[i][0]).expect("nonempty");
            return Ok(vec![vec![*lo, *hi]]);
        }
        _ => {}
    }
    let by_coord: HashMap<&IntegerVector, usize> = ids.iter().map(|&i| (&coords[i], i)).collect();
    let q = Polytope::new(k, ids.iter().map(|&i| coords[i].clone()).collect())?;
    let vertex_ids: Vec<usize> = q.vertices().iter().map(|v| by_coord[v]).collect();
    let apex = (0..vertex_ids.len()).min_by_key(|&j| vertex_ids[j]).expect("nonempty");
    let mut cells = Vec::new();
    for facet in q.facets() {
        if facet.vertex_indices.contains(&apex) {
            continue;
        }
        let mut face_ids: Vec<usize> = facet.vertex_indices.iter().map(|&j| vertex_ids[j]).collect();
        face_ids.sort_unstable();
        let chart = HyperplaneChart::new(&facet.normal, coords[face_ids[0]].clone())?;
        // sub-configuration in Z^(k-1), indexed through a local table
        let local: Vec<IntegerVector> = face_ids.iter().map(|&i| chart.coords(&coords[i])).collect();
        let local_ids: Vec<usize> = (0..face_ids.len()).collect();
        for cell in pull_vertices(k - 1, &local, &local_ids)? {
            let mut full: Vec<usize> = cell.into_iter().map(|j| face_ids[j]).collect();
            full.push(vertex_ids[apex]);
            cells.push(full);
        }
    }
    Ok(cells)
}

/// Homogeneous determinant `det[(w_0, 1); ...; (w_k, 1)]`.
fn homogeneous_det(points: &[&IntegerVector]) -> BigInt {
    let rows = points
        .iter()
        .map(|p| {
            let mut e = p.entries().to_vec();
            e.push(BigInt::one());
            IntegerVector::new(e)
        })
        .collect();
    determinant(&IntegerMatrix::new(rows).expect("rows share a dimension")).expect("square")
}

/// Replaces every cell containing point `p` by the cones from `p` over the
/// cell's facets that do not contain `p`.
fn stellar_subdivision(cells: Vec<Vec<usize>>, coords: &[IntegerVector], p: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(cells.len() + 4);
    let mut hit = false;
    for cell in cells {
        let pts: Vec<&IntegerVector> = cell.iter().map(|&i| &coords[i]).collect();
        let total = homogeneous_det(&pts);
        // barycentric numerators, each with the sign of `total` when p is inside
        let lambdas: Vec<BigInt> = (0..cell.len())
            .map(|i| {
                let mut q = pts.clone();
                q[i] = &coords[p];
                homogeneous_det(&q)
            })
            .collect();
        let inside = lambdas.iter().all(|l| l.is_zero() || l.signum() == total.signum());
        if !inside {
            out.push(cell);
            continue;
        }
        hit = true;
        for (i, l) in lambdas.iter().enumerate() {
            if !l.is_zero() {
                let mut next = cell.clone();
                next[i] = p;
                out.push(next);
            }
        }
    }
    if !hit {
        return Err(Error::InternalInconsistency(format!(
            "lattice point {} lies in no cell of the facet triangulation",
            coords[p]
        )));
    }
    Ok(out)
}

/// `{conv(0 ∪ F) : F facet}` for a simplicial polytope with the origin in its interior.
pub fn cone_triangulation(p: &Polytope) -> Result<Triangulation> {
    if !p.is_simplicial() {
        return Err(Error::UnsupportedShape("cone triangulation needs a simplicial polytope".into()));
    }
    if !p.has_interior_origin() {
        return Err(Error::Precondition("cone triangulation needs the origin in the strict interior".into()));
    }
    let d = p.dim();
    let mut simplices = Vec::with_capacity(p.facets().len());
    for (fi, f) in p.facets().iter().enumerate() {
        let verts = p.facet_vertices(f);
        let det = determinant(&IntegerMatrix::new(verts.clone())?)?.abs();
        let mut vertices = vec![IntegerVector::zero(d)];
        vertices.extend(verts);
        simplices.push(LatticeSimplex { vertices, det, facet: fi });
    }
    let t = Triangulation::new(d, TriangulationKind::FullCone, simplices);
    let volume = p.normalized_volume();
    if t.total_det() != volume {
        return Err(Error::InternalInconsistency(format!(
            "cone simplices cover volume {}, polytope has {volume}",
            t.total_det()
        )));
    }
    Ok(t)
}

/// Every simplex has normalized volume one.
pub fn is_unimodular_triangulation(t: &Triangulation) -> bool {
    t.simplices.iter().all(LatticeSimplex::is_unimodular)
}

/// h-vector of a boundary triangulation viewed as a simplicial complex.
pub fn triangulation_h_vector(t: &Triangulation) -> Result<HVector> {
    h_from_f(&t.f_vector()?, t.dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HibiReport {
    /// `h_i(Δ) <= δ_i(P)` for all `i`.
    pub holds: bool,
    /// `h(Δ) == δ(P)`.
    pub equality: bool,
    pub unimodular: bool,
    pub h: HVector,
    pub delta: DeltaVector,
}

/// Compares the h-vector of a boundary triangulation with the delta-vector of
/// a reflexive polytope. Equality must hold exactly when the triangulation is
/// unimodular.
pub fn check_hibi_inequality(p: &Polytope, t: &Triangulation) -> Result<HibiReport> {
    if !is_reflexive(p) {
        return Err(Error::Precondition("the h/δ comparison needs a reflexive polytope".into()));
    }
    if t.kind != TriangulationKind::Boundary || t.dim != p.dim() {
        return Err(Error::Precondition("expected a boundary triangulation of the polytope".into()));
    }
    for v in &t.vertex_set {
        if p.contains_point(v, 1)? != Location::Boundary {
            return Err(Error::Precondition(format!("triangulation vertex {v} is not a boundary lattice point")));
        }
    }
    let h = triangulation_h_vector(t)?;
    let delta = delta_vector(p)?;
    let holds = h.as_slice().iter().zip(delta.as_slice()).all(|(a, b)| a <= b);
    let equality = h.as_slice() == delta.as_slice();
    let unimodular = is_unimodular_triangulation(t);
    if equality != unimodular {
        return Err(Error::TheoremViolation(format!(
            "h(Δ) = {h}, δ = {delta}: equality is {equality} but unimodularity is {unimodular}"
        )));
    }
    Ok(HibiReport {
        holds,
        equality,
        unimodular,
        h,
        delta,
    })
}

/// `lcm{det σ}`; the corresponding dilate of a reflexive polytope has a
/// unimodular triangulation.
pub fn triangulation_index_lcm(t: &Triangulation) -> Result<BigInt> {
    lcm_all(t.simplices.iter().map(|s| &s.det))
        .ok_or_else(|| Error::Degenerate("empty triangulation has no index".into()))
}

/// Builds the cone triangulation of a smooth Fano polytope and confirms that
/// it is unimodular.
pub fn verify_oda_theorem(p: &Polytope) -> Result<bool> {
    if !is_smooth_fano(p) {
        return Err(Error::Precondition("input is not smooth Fano".into()));
    }
    let t = cone_triangulation(p)?;
    if !is_unimodular_triangulation(&t) {
        let dets: BTreeMap<usize, &BigInt> = t.simplices.iter().map(|s| (s.facet, &s.det)).filter(|(_, d)| !d.is_one()).collect();
        return Err(Error::TheoremViolation(format!(
            "cone triangulation of a smooth Fano polytope has non-unimodular simplices {dets:?}"
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::*;

    fn dets(t: &Triangulation) -> Vec<i64> {
        t.simplices.iter().map(|s| i64::try_from(&s.det).unwrap()).collect()
    }

    #[test]
    fn boundary_complex_examples() {
        let t = boundary_triangulation(&cross_polytope(3), false).unwrap();
        assert_eq!(dets(&t), vec![1; 8]);
        let t = boundary_triangulation(&hexagon(), false).unwrap();
        assert_eq!(dets(&t), vec![1; 6]);
        assert!(matches!(boundary_triangulation(&cube(3), false), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn all_points_boundary_of_square() {
        let t = boundary_triangulation(&square(), true).unwrap();
        assert_eq!(t.simplices.len(), 8);
        assert_eq!(t.vertex_set.len(), 8);
        assert_eq!(dets(&t), vec![1; 8]);
        for mid in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            assert!(t.vertex_set.contains(&IntegerVector::from_i64s(&mid)));
        }
    }

    #[test]
    fn all_points_boundary_of_cube() {
        // each square facet of [-1,1]^3 carries 9 lattice points and 8 unimodular triangles
        let t = boundary_triangulation(&cube(3), true).unwrap();
        assert_eq!(t.simplices.len(), 48);
        assert_eq!(t.vertex_set.len(), 26);
        assert!(is_unimodular_triangulation(&t));
        assert!(t.f_vector().unwrap().satisfies_euler_relation());
    }

    #[test]
    fn all_points_requires_reflexive() {
        let p = Polytope::from_i64_points(2, &[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]]).unwrap();
        assert!(matches!(boundary_triangulation(&p, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn cone_examples() {
        let t = cone_triangulation(&hexagon()).unwrap();
        assert_eq!(dets(&t), vec![1; 6]);
        assert_eq!(t.total_det(), BigInt::from(6));
        let t = cone_triangulation(&cross_polytope(3)).unwrap();
        assert_eq!(dets(&t), vec![1; 8]);
        let t = cone_triangulation(&square()).unwrap();
        assert_eq!(dets(&t), vec![2; 4]);
        assert_eq!(t.total_det(), BigInt::from(8));
        let off = Polytope::from_i64_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(cone_triangulation(&off), Err(Error::Precondition(_))));
    }

    #[test]
    fn unimodularity_examples() {
        assert!(is_unimodular_triangulation(&cone_triangulation(&hexagon()).unwrap()));
        assert!(!is_unimodular_triangulation(&cone_triangulation(&square()).unwrap()));
        assert!(is_unimodular_triangulation(&cone_triangulation(&cross_polytope(3)).unwrap()));
    }

    #[test]
    fn h_vector_examples() {
        let t = boundary_triangulation(&cross_polytope(3), false).unwrap();
        assert_eq!(triangulation_h_vector(&t).unwrap(), HVector(vec![1, 3, 3, 1]));
        let t = boundary_triangulation(&square(), true).unwrap();
        assert_eq!(t.f_vector().unwrap(), FVector(vec![8, 8]));
        assert_eq!(triangulation_h_vector(&t).unwrap(), HVector(vec![1, 6, 1]));
        let t = boundary_triangulation(&hexagon(), false).unwrap();
        assert_eq!(triangulation_h_vector(&t).unwrap(), HVector(vec![1, 4, 1]));
        let cone = cone_triangulation(&hexagon()).unwrap();
        assert!(matches!(triangulation_h_vector(&cone), Err(Error::Precondition(_))));
    }

    #[test]
    fn hibi_examples() {
        let octa = cross_polytope(3);
        let r = check_hibi_inequality(&octa, &boundary_triangulation(&octa, false).unwrap()).unwrap();
        assert!(r.holds && r.equality && r.unimodular);

        let sq = square();
        let r = check_hibi_inequality(&sq, &boundary_triangulation(&sq, false).unwrap()).unwrap();
        assert!(r.holds && !r.equality && !r.unimodular);
        assert_eq!(r.h, HVector(vec![1, 2, 1]));
        assert_eq!(r.delta, DeltaVector(vec![1, 6, 1]));

        let hex = hexagon();
        let r = check_hibi_inequality(&hex, &boundary_triangulation(&hex, false).unwrap()).unwrap();
        assert!(r.holds && r.equality && r.unimodular);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(triangulation_index_lcm(&cone_triangulation(&hexagon()).unwrap()).unwrap(), BigInt::from(1));
        assert_eq!(triangulation_index_lcm(&cone_triangulation(&square()).unwrap()).unwrap(), BigInt::from(2));
        let mixed = Triangulation::new(
            2,
            TriangulationKind::FullCone,
            [1, 2, 3]
                .iter()
                .map(|&d| LatticeSimplex {
                    vertices: vec![],
                    det: BigInt::from(d),
                    facet: 0,
                })
                .collect(),
        );
        assert_eq!(triangulation_index_lcm(&mixed).unwrap(), BigInt::from(6));
        let empty = Triangulation::new(2, TriangulationKind::FullCone, vec![]);
        assert!(matches!(triangulation_index_lcm(&empty), Err(Error::Degenerate(_))));
    }

    #[test]
    fn oda_examples() {
        assert!(verify_oda_theorem(&cross_polytope(3)).unwrap());
        assert!(verify_oda_theorem(&hexagon()).unwrap());
        assert!(matches!(verify_oda_theorem(&square()), Err(Error::Precondition(_))));
    }
}
