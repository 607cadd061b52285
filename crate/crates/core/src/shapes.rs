//! A handful of named lattice polytopes used throughout the docs and tests.

use crate::linalg::IntegerVector;
use crate::polytope::Polytope;

/// `conv{±e_1, ..., ±e_d}`; the octahedron for `d = 3`.
pub fn cross_polytope(d: usize) -> Polytope {
    let pts = (0..d)
        .flat_map(|i| {
            let e = IntegerVector::unit(d, i);
            [-&e, e]
        })
        .collect();
    Polytope::new(d, pts).expect("cross-polytope is full-dimensional")
}

/// `[-1, 1]^d`.
pub fn cube(d: usize) -> Polytope {
    let pts = (0..1u32 << d)
        .map(|mask| IntegerVector::from_i64s(&(0..d).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect::<Vec<_>>()))
        .collect();
    Polytope::new(d, pts).expect("cube is full-dimensional")
}

/// The square `[-1, 1]^2`.
pub fn square() -> Polytope {
    cube(2)
}

/// `conv{±(1,0), ±(0,1), ±(1,1)}`.
pub fn hexagon() -> Polytope {
    Polytope::from_i64_points(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]).expect("hexagon")
}

/// `conv{(1,0), (0,1), (-1,-1)}`.
pub fn reflexive_triangle() -> Polytope {
    Polytope::from_i64_points(2, &[&[1, 0], &[0, 1], &[-1, -1]]).expect("triangle")
}

/// `conv{e_1, ..., e_d, -(e_1 + ... + e_d)}`.
pub fn reflexive_simplex(d: usize) -> Polytope {
    let mut pts: Vec<IntegerVector> = (0..d).map(|i| IntegerVector::unit(d, i)).collect();
    pts.push(IntegerVector::from_i64s(&vec![-1; d]));
    Polytope::new(d, pts).expect("simplex is full-dimensional")
}
