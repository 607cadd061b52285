//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Bareiss
//! determinants, row-style Hermite normal form with an accumulated unimodular
//! transform, primitive vectors and lattice-basis tests. Matrices are small
//! (at most about 10x10), so no modular tricks are used.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An integer vector, e.g. a lattice point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(Vec<BigInt>);

impl IntegerVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntegerVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntegerVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntegerVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntegerVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntegerVector {
        IntegerVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Coordinates as machine integers, for the enumeration kernels.
    pub fn to_i64s(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow(format!("coordinate {x} does not fit in i64"))))
            .collect()
    }
}

impl Index<usize> for IntegerVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntegerVector {
    type Output = IntegerVector;
    fn add(self, rhs: &IntegerVector) -> IntegerVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntegerVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntegerVector {
    type Output = IntegerVector;
    fn sub(self, rhs: &IntegerVector) -> IntegerVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntegerVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntegerVector {
    type Output = IntegerVector;
    fn neg(self) -> IntegerVector {
        IntegerVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: Vec<IntegerVector>,
    ncols: usize,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<IntegerVector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, IntegerVector::dim);
        if let Some(bad) = rows.iter().position(|r| r.dim() != ncols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {ncols}",
                rows[bad].dim()
            )));
        }
        Ok(IntegerMatrix { rows, ncols })
    }

    /// An `nrows x ncols` zero matrix; `ncols` is kept even when there are no rows.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntegerMatrix {
            rows: vec![IntegerVector::zero(ncols); nrows],
            ncols,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntegerVector::from_i64s(r)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntegerVector]) -> Result<Self> {
        Ok(Self::new(columns.to_vec())?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix {
            rows: (0..n).map(|i| IntegerVector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn rows(&self) -> &[IntegerVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &IntegerVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i].0[j]
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let rows = (0..self.ncols)
            .map(|j| IntegerVector(self.rows.iter().map(|r| r.0[j].clone()).collect()))
            .collect();
        IntegerMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                other.nrows(),
                other.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                IntegerVector(
                    (0..other.ncols)
                        .map(|j| r.0.iter().zip(&other.rows).map(|(a, orow)| a * &orow.0[j]).sum())
                        .collect(),
                )
            })
            .collect();
        Ok(IntegerMatrix {
            rows,
            ncols: other.ncols,
        })
    }

    /// Row vector times matrix: `x^T * self`.
    pub fn left_apply(&self, x: &IntegerVector) -> IntegerVector {
        debug_assert_eq!(x.dim(), self.nrows());
        IntegerVector(
            (0..self.ncols)
                .map(|j| x.0.iter().zip(&self.rows).map(|(a, r)| a * &r.0[j]).sum())
                .collect(),
        )
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.0.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
///
/// The empty `0x0` matrix has determinant 1.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
}

/// Row-style Hermite normal form `H = U * m`.
///
/// `H` is in row echelon form with zeros below each pivot, positive pivots,
/// and entries above a pivot reduced into `[0, pivot)`. Zero rows come last.
/// `U` is unimodular.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let mut u: Vec<Vec<BigInt>> = IntegerMatrix::identity(nrows).rows.into_iter().map(|r| r.0).collect();

    fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
        let src = rows[source].clone();
        for (x, s) in rows[target].iter_mut().zip(&src) {
            *x -= q * s;
        }
    }

    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        loop {
            let best = (pivot_row..nrows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..nrows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot_row][col]);
                sub_multiple(&mut a, i, pivot_row, &q);
                sub_multiple(&mut u, i, pivot_row, &q);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            for x in a[pivot_row].iter_mut().chain(u[pivot_row].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..pivot_row {
            let q = a[i][col].div_floor(&a[pivot_row][col]);
            if !q.is_zero() {
                sub_multiple(&mut a, i, pivot_row, &q);
                sub_multiple(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }

    let h = IntegerMatrix {
        rows: a.into_iter().map(IntegerVector).collect(),
        ncols,
    };
    let u = IntegerMatrix {
        rows: u.into_iter().map(IntegerVector).collect(),
        ncols: nrows,
    };
    (h, u)
}

/// Rank over the rationals.
pub fn rank(m: &IntegerMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    h.rows.iter().filter(|r| !r.is_zero()).count()
}

/// `v` divided by the gcd of its entries.
pub fn primitive_vector(v: &IntegerVector) -> Result<IntegerVector> {
    let g = v.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::Degenerate("zero vector has no primitive direction".into()));
    }
    Ok(IntegerVector(v.0.iter().map(|x| x / &g).collect()))
}

/// True iff the `d` vectors form a basis of `Z^d`, i.e. their determinant is `±1`.
pub fn is_unimodular_basis(vectors: &[IntegerVector], d: usize) -> Result<bool> {
    if vectors.len() != d {
        return Err(Error::Dimension(format!("expected {d} vectors, got {}", vectors.len())));
    }
    if let Some(v) = vectors.iter().find(|v| v.dim() != d) {
        return Err(Error::Dimension(format!("vector {v} is not in Z^{d}")));
    }
    let det = determinant(&IntegerMatrix::new(vectors.to_vec())?)?;
    Ok(det.abs().is_one())
}

/// Normal vector `n` of the hyperplane spanned by `d - 1` vectors in `Z^d`,
/// with `det[x; vectors] = <n, x>` for every `x`. Zero iff the vectors are dependent.
pub fn hyperplane_normal(vectors: &[IntegerVector], d: usize) -> IntegerVector {
    debug_assert_eq!(vectors.len() + 1, d);
    let entries = (0..d)
        .map(|i| {
            let minor = IntegerMatrix {
                rows: vectors
                    .iter()
                    .map(|v| IntegerVector(v.0.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()))
                    .collect(),
                ncols: d - 1,
            };
            let det = determinant(&minor).expect("minor is square");
            if i % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    IntegerVector(entries)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntegerMatrix) -> Result<IntegerMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.nrows();
    let mut a: Vec<Vec<BigRational>> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.0.iter()
                .cloned()
                .chain((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }))
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Degenerate("singular matrix has no inverse".into()))?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let src = a[col].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x -= &f * s;
                }
            }
        }
    }
    let rows = a
        .into_iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Precondition("matrix is not unimodular".into()))
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map(IntegerVector)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerMatrix { rows, ncols: n })
}

/// Integer coordinates on a lattice hyperplane `{x : <a, x> = <a, origin>}`.
///
/// The hyperplane lattice is identified with `Z^(d-1)` through the rows of the
/// HNF transform of the column vector `a`: rows `1..d` of that transform span
/// the sublattice `a^⊥ ∩ Z^d`.
#[derive(Clone, Debug)]
pub struct HyperplaneChart {
    origin: IntegerVector,
    inverse: IntegerMatrix,
}

impl HyperplaneChart {
    /// `normal` must be primitive.
    pub fn new(normal: &IntegerVector, origin: IntegerVector) -> Result<Self> {
        let d = normal.dim();
        let column = IntegerMatrix::new(normal.0.iter().map(|x| IntegerVector(vec![x.clone()])).collect())?;
        let (h, u) = hermite_normal_form(&column);
        if d == 0 || !h.get(0, 0).is_one() {
            return Err(Error::Precondition(format!("hyperplane normal {normal} is not primitive")));
        }
        Ok(HyperplaneChart {
            origin,
            inverse: unimodular_inverse(&u)?,
        })
    }

    /// Coordinates in `Z^(d-1)` of a lattice point on the hyperplane.
    pub fn coords(&self, x: &IntegerVector) -> IntegerVector {
        let c = self.inverse.left_apply(&(x - &self.origin));
        debug_assert!(c.0[0].is_zero(), "point {x} is off the chart hyperplane");
        IntegerVector(c.0[1..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows).unwrap()
    }

    fn v(x: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(x)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntegerMatrix::identity(2)).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[2, 1], &[0, 1]])).unwrap(), BigInt::from(2));
        // cofactor expansion along the first row: 1*(1*1-0*1) - 0 + 0 = 1
        assert_eq!(determinant(&m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(determinant(&IntegerMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert!(matches!(determinant(&m(&[&[1, 2, 3]])), Err(Error::Dimension(_))));
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&IntegerMatrix::identity(3));
        assert_eq!(h, IntegerMatrix::identity(3));
        assert_eq!(u, IntegerMatrix::identity(3));

        let diag = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(hermite_normal_form(&diag).0, diag);

        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(determinant(&h).unwrap().abs(), BigInt::from(2));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_rank_deficient() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(h.row(2).is_zero());
        assert_eq!(rank(&a), 2);
        assert!(determinant(&u).unwrap().abs().is_one());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&v(&[2, 4])).unwrap(), v(&[1, 2]));
        assert_eq!(primitive_vector(&v(&[1, 0, 0])).unwrap(), v(&[1, 0, 0]));
        assert_eq!(primitive_vector(&v(&[-3, -6, 9])).unwrap(), v(&[-1, -2, 3]));
        assert!(matches!(primitive_vector(&v(&[0, 0])), Err(Error::Degenerate(_))));
    }

    #[test]
    fn unimodular_basis_examples() {
        assert!(is_unimodular_basis(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap());
        assert!(!is_unimodular_basis(&[v(&[1, 1]), v(&[1, -1])], 2).unwrap());
        assert!(is_unimodular_basis(&[v(&[1, 0]), v(&[1, 1])], 2).unwrap());
        assert!(matches!(is_unimodular_basis(&[v(&[1, 0])], 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn normal_of_plane() {
        let n = hyperplane_normal(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3);
        assert_eq!(n, v(&[0, 0, 1]));
        // d = 1: the empty family spans {0}; the normal is the unit vector
        assert_eq!(hyperplane_normal(&[], 1), v(&[1]));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntegerMatrix::identity(2));
        assert!(unimodular_inverse(&m(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn chart_coordinates_are_a_lattice_isomorphism() {
        // plane x + y + z = 1 through e1
        let chart = HyperplaneChart::new(&v(&[1, 1, 1]), v(&[1, 0, 0])).unwrap();
        let pts = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let c: Vec<_> = pts.iter().map(|p| chart.coords(p)).collect();
        assert_eq!(c[0], v(&[0, 0]));
        let det = determinant(&IntegerMatrix::new(vec![&c[1] - &c[0], &c[2] - &c[0]]).unwrap()).unwrap();
        assert!(det.abs().is_one());
    }
}
