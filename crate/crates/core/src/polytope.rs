//! Full-dimensional lattice polytopes in V-representation.
//!
//! Facets are found by exhaustive candidate hyperplanes through `d`-subsets of
//! the input points, which is exact and fast enough for the sizes this crate
//! targets (tens of vertices, dimension at most about 8). Normalized volumes
//! are computed recursively: each facet is mapped into its own hyperplane
//! lattice, measured there, and coned from the vertex centroid.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::binomial;
use crate::linalg::{hyperplane_normal, primitive_vector, rank, HyperplaneChart, IntegerMatrix, IntegerVector};
use crate::{Error, Result};

/// A facet `{x : <normal, x> = offset}` with `<normal, x> <= offset` on the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescription {
    /// Primitive outer normal.
    pub normal: IntegerVector,
    pub offset: BigInt,
    /// Sorted indices into [`Polytope::vertices`].
    pub vertex_indices: Vec<usize>,
}

/// Where a lattice point sits relative to a dilate `mP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<IntegerVector>,
    facets: Vec<FacetDescription>,
    simplicial: bool,
    facet_volumes: OnceLock<Vec<BigInt>>,
}

/// Face numbers `(f_0, ..., f_{d-1})` of a simplicial polytope or complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<u64>);

/// `(h_0, ..., h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector(pub Vec<u64>);

impl FVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `sum (-1)^i f_i = 1 - (-1)^d`, the Euler relation of a `(d-1)`-sphere.
    pub fn satisfies_euler_relation(&self) -> bool {
        let d = self.0.len();
        let alternating: i128 = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i128 } else { -(f as i128) })
            .sum();
        alternating == if d.is_multiple_of(2) { 0 } else { 2 }
    }
}

impl HVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

impl Polytope {
    /// Convex hull of `points` in `Z^dim`. Duplicates are dropped, non-extreme
    /// points are discarded, and lower-dimensional inputs are rejected.
    pub fn new(dim: usize, points: Vec<IntegerVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("polytope dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::Degenerate("empty point set".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::Dimension(format!("point {p} is not in Z^{dim}")));
        }
        let mut seen = HashSet::new();
        let points: Vec<IntegerVector> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();

        let diffs: Vec<IntegerVector> = points[1..].iter().map(|p| p - &points[0]).collect();
        if diffs.len() < dim || rank(&IntegerMatrix::new(diffs)?) < dim {
            return Err(Error::Degenerate(format!("points do not span a {dim}-dimensional polytope")));
        }

        let raw = enumerate_facets(dim, &points);

        // A point is a vertex iff the normals of the facets through it span R^d.
        let is_vertex: Vec<bool> = (0..points.len())
            .map(|i| {
                let normals: Vec<IntegerVector> = raw
                    .iter()
                    .filter(|f| f.vertex_indices.binary_search(&i).is_ok())
                    .map(|f| f.normal.clone())
                    .collect();
                normals.len() >= dim && rank(&IntegerMatrix::new(normals).expect("normals share a dimension")) == dim
            })
            .collect();
        let mut new_index = vec![usize::MAX; points.len()];
        let mut vertices = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            if is_vertex[i] {
                new_index[i] = vertices.len();
                vertices.push(p);
            }
        }
        let mut facets: Vec<FacetDescription> = raw
            .into_iter()
            .map(|f| FacetDescription {
                vertex_indices: f
                    .vertex_indices
                    .iter()
                    .filter(|&&i| is_vertex[i])
                    .map(|&i| new_index[i])
                    .collect(),
                ..f
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        let simplicial = facets.iter().all(|f| f.vertex_indices.len() == dim);
        Ok(Polytope {
            dim,
            vertices,
            facets,
            simplicial,
            facet_volumes: OnceLock::new(),
        })
    }

    pub fn from_i64_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| IntegerVector::from_i64s(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntegerVector] {
        &self.vertices
    }

    /// Complete, duplicate-free facet list sorted by normal.
    pub fn facets(&self) -> &[FacetDescription] {
        &self.facets
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    /// The origin lies in the strict interior iff every facet offset is positive.
    pub fn has_interior_origin(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    pub fn facet_vertices(&self, facet: &FacetDescription) -> Vec<IntegerVector> {
        facet.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Face numbers of a simplicial polytope, counted from facet vertex sets.
    pub fn f_vector(&self) -> Result<FVector> {
        if !self.simplicial {
            return Err(Error::UnsupportedShape("f-vector is only computed for simplicial polytopes".into()));
        }
        Ok(f_vector_of_complex(self.dim, self.facets.iter().map(|f| f.vertex_indices.clone())))
    }

    /// Edges of a simplicial polytope as sorted vertex-index pairs.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        if !self.simplicial {
            return Err(Error::UnsupportedShape("edges are only derived for simplicial polytopes".into()));
        }
        let edges: BTreeSet<(usize, usize)> = self
            .facets
            .iter()
            .flat_map(|f| f.vertex_indices.iter().copied().tuple_combinations::<(usize, usize)>())
            .collect();
        Ok(edges.into_iter().collect())
    }

    /// `(d-1)!`-normalized volume of each facet in the lattice of its hyperplane,
    /// in the order of [`Polytope::facets`].
    pub fn facet_normalized_volumes(&self) -> &[BigInt] {
        self.facet_volumes.get_or_init(|| {
            self.facets
                .iter()
                .map(|f| {
                    if self.dim == 1 {
                        return BigInt::from(1);
                    }
                    let verts = self.facet_vertices(f);
                    let chart = HyperplaneChart::new(&f.normal, verts[0].clone()).expect("facet normals are primitive");
                    let coords: Vec<IntegerVector> = verts.iter().map(|v| chart.coords(v)).collect();
                    Polytope::new(self.dim - 1, coords)
                        .expect("a facet is full-dimensional in its hyperplane")
                        .normalized_volume()
                })
                .collect()
        })
    }

    /// `d! * vol(P)`.
    ///
    /// Cones every facet from the vertex centroid `c`: the pyramid over `F`
    /// has normalized volume `(b_F - <a_F, c>) * vol(F)` since `a_F` is primitive.
    pub fn normalized_volume(&self) -> BigInt {
        if self.dim == 1 {
            let xs = self.vertices.iter().map(|v| &v[0]);
            let (lo, hi) = xs.minmax().into_option().expect("nonempty");
            return hi - lo;
        }
        let k = BigInt::from(self.vertices.len());
        let sum = self.vertices.iter().skip(1).fold(self.vertices[0].clone(), |acc, v| &acc + v);
        let scaled: BigInt = self
            .facets
            .iter()
            .zip(self.facet_normalized_volumes())
            .map(|(f, vol)| (&k * &f.offset - f.normal.dot(&sum)) * vol)
            .sum();
        let (q, r) = scaled.div_rem(&k);
        debug_assert!(r.is_zero(), "normalized volume must be an integer");
        q
    }

    /// `(d-1)! * vol(∂P)` with each facet measured in its own hyperplane lattice.
    /// For polygons this is the number of boundary lattice points.
    pub fn normalized_boundary_volume(&self) -> BigInt {
        self.facet_normalized_volumes().iter().sum()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let set: HashSet<&IntegerVector> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&-v))
    }

    /// Classify `x` against the dilate `mP` through the facet inequalities
    /// `<a, x> <= m b`. For `m = 0` the only point of `0P` is the origin, which
    /// is reported as boundary.
    pub fn contains_point(&self, x: &IntegerVector, m: u64) -> Result<Location> {
        if x.dim() != self.dim {
            return Err(Error::Dimension(format!("point {x} is not in Z^{}", self.dim)));
        }
        let m = BigInt::from(m);
        let mut on_boundary = false;
        for f in &self.facets {
            let lhs = f.normal.dot(x);
            let rhs = &m * &f.offset;
            if lhs > rhs {
                return Ok(Location::Outside);
            }
            on_boundary |= lhs == rhs;
        }
        Ok(if on_boundary { Location::Boundary } else { Location::Interior })
    }
}

/// All facets of `conv(points)`, with `vertex_indices` listing every input point on the facet.
fn enumerate_facets(dim: usize, points: &[IntegerVector]) -> Vec<FacetDescription> {
    let mut found: HashSet<IntegerVector> = HashSet::new();
    let mut facets = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        let base = &points[subset[0]];
        let diffs: Vec<IntegerVector> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let normal = hyperplane_normal(&diffs, dim);
        let Ok(normal) = primitive_vector(&normal) else { continue };
        let offset = normal.dot(base);
        let values: Vec<BigInt> = points.iter().map(|p| normal.dot(p)).collect();
        let (normal, offset) = if values.iter().all(|v| v <= &offset) {
            (normal, offset)
        } else if values.iter().all(|v| v >= &offset) {
            (-&normal, -offset)
        } else {
            continue;
        };
        if !found.insert(normal.clone()) {
            continue;
        }
        let vertex_indices = points
            .iter()
            .enumerate()
            .filter(|(_, p)| normal.dot(p) == offset)
            .map(|(i, _)| i)
            .collect();
        facets.push(FacetDescription {
            normal,
            offset,
            vertex_indices,
        });
    }
    facets
}

/// Face numbers `(f_0, ..., f_{d-1})` of the pure simplicial complex generated
/// by the given maximal faces (each of size `d`).
pub fn f_vector_of_complex(d: usize, maximal_faces: impl IntoIterator<Item = Vec<usize>>) -> FVector {
    let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d];
    for mut face in maximal_faces {
        face.sort_unstable();
        for k in 1..=face.len().min(d) {
            for sub in face.iter().copied().combinations(k) {
                faces[k - 1].insert(sub);
            }
        }
    }
    FVector(faces.iter().map(|s| s.len() as u64).collect())
}

/// h-vector of a simplicial `(d-1)`-sphere (or complex) from its f-vector:
/// `h_k = sum_{i=0..k} (-1)^(k-i) C(d-i, d-k) f_{i-1}` with `f_{-1} = 1`.
pub fn h_from_f(f: &FVector, d: usize) -> Result<HVector> {
    if f.0.len() != d {
        return Err(Error::Dimension(format!("f-vector of length {} given for d = {d}", f.0.len())));
    }
    let face = |i: usize| -> BigInt {
        if i == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(f.0[i - 1])
        }
    };
    let mut h = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let hk: BigInt = (0..=k)
            .map(|i| {
                let term = binomial((d - i) as u64, (d - k) as u64) * face(i);
                if (k - i) % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        if hk.is_negative() {
            return Err(Error::InconsistentInput(format!(
                "h_{k} = {hk} is negative; {f} is not the f-vector of a simplicial polytope"
            )));
        }
        h.push(crate::arith::to_u64(&hk, "h-vector entry")?);
    }
    Ok(HVector(h))
}
