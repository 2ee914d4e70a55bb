//! Rank, kernels, determinants and subspace coordinates.
//!
//! Exact backends use fraction-free (Bareiss) elimination for rank and
//! determinant and Gauss-Jordan elimination for kernels. The float backend
//! uses the singular value decomposition for rank and kernels and pivoted LU
//! for determinants.
//!
//! Every subspace basis is kept in one canonical form: a reduced column
//! echelon form in which the last nonzero entry of each column is 1 and the
//! row holding it (the pivot row) is zero in every other column. Columns are
//! ordered by increasing pivot row. The form is unique for a given subspace,
//! so kernels computed twice, or via different routes, compare equal.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, C64};

/// Default relative tolerance for residual and membership checks on the
/// float backend.
pub const FLOAT_CHECK_TOL: f64 = 1e-9;

/// Gauss-Jordan elimination in place. Returns the pivot columns.
///
/// On the float backend a column whose largest remaining entry is below
/// `tol` times the largest entry of the input is treated as zero.
pub(crate) fn rref<T: Field>(a: &mut Matrix<T>, tol: f64) -> Vec<usize> {
    let (rows, cols) = a.shape();
    let scale = a.max_modulus();
    let mut pivots = Vec::new();
    if scale == 0.0 {
        return pivots;
    }
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pick = if T::EXACT {
            (r..rows).find(|&i| !a[(i, c)].is_zero())
        } else {
            let (best, val) =
                (r..rows)
                    .map(|i| (i, a[(i, c)].modulus()))
                    .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if val > tol * scale {
                Some(best)
            } else {
                for i in r..rows {
                    a[(i, c)] = T::zero();
                }
                None
            }
        };
        let Some(p) = pick else { continue };
        swap_rows(a, r, p);
        let inv = T::one() / a[(r, c)].clone();
        for j in c..cols {
            let v = a[(r, j)].clone() * inv.clone();
            a[(r, j)] = v;
        }
        a[(r, c)] = T::one();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                a[(i, j)] = v;
            }
            a[(i, c)] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows<T: Field>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let tmp = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = tmp;
    }
}

fn to_nalgebra<T: Field>(a: &Matrix<T>) -> DMatrix<C64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].to_complex())
}

/// Singular values (descending) of the complex image of `a`.
pub fn singular_values<T: Field>(a: &Matrix<T>) -> Vec<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_nalgebra(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Default numerical-rank threshold factor `max(rows, cols) * eps`.
pub fn default_rank_tol(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

/// Null space via a full SVD; columns are right singular vectors.
fn float_null_space<T: Field>(a: &Matrix<T>, rel_tol: f64) -> Vec<Vec<C64>> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Vec::new();
    }
    let n = rows.max(cols);
    // pad to a square so the SVD returns a complete right basis
    let mut m = DMatrix::<C64>::zeros(n, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = a[(i, j)].to_complex();
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    (0..v_t.nrows())
        .filter(|&k| svd.singular_values[k] <= rel_tol * smax || smax == 0.0)
        .map(|k| (0..cols).map(|j| v_t[(k, j)].conj()).collect())
        .collect()
}

impl<T: Field> Matrix<T> {
    /// Rank. Exact backends: fraction-free elimination. Float backend:
    /// number of singular values above `max(rows, cols) * eps * s_max`.
    pub fn rank(&self) -> usize {
        self.rank_with_tol(None)
    }

    /// Rank with an optional relative singular-value threshold (float only).
    pub fn rank_with_tol(&self, rel_tol: Option<f64>) -> usize {
        if T::EXACT {
            return bareiss_rank(self);
        }
        let s = singular_values(self);
        let Some(&smax) = s.first() else { return 0 };
        if smax == 0.0 {
            return 0;
        }
        let tol = rel_tol.unwrap_or_else(|| default_rank_tol(self.rows(), self.cols()));
        s.iter().filter(|&&v| v > tol * smax).count()
    }

    /// Canonical basis of the right null space.
    pub fn kernel_basis(&self) -> SubspaceBasis<T> {
        self.kernel_basis_with_tol(None)
    }

    pub fn kernel_basis_with_tol(&self, rel_tol: Option<f64>) -> SubspaceBasis<T> {
        let n = self.cols();
        if T::EXACT {
            let mut r = self.clone();
            let pivots = rref(&mut r, 0.0);
            let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
            let cols: Vec<Vec<T>> = free
                .iter()
                .map(|&f| {
                    let mut v = vec![T::zero(); n];
                    v[f] = T::one();
                    for (row, &p) in pivots.iter().enumerate() {
                        v[p] = -r[(row, f)].clone();
                    }
                    v
                })
                .collect();
            return SubspaceBasis::from_spanning(n, &cols);
        }
        let tol = rel_tol.unwrap_or_else(|| default_rank_tol(self.rows(), self.cols()));
        let cols: Vec<Vec<T>> = float_null_space(self, tol)
            .into_iter()
            .map(|v| v.iter().map(|z| complex_to::<T>(*z)).collect())
            .collect();
        SubspaceBasis::from_spanning(n, &cols)
    }

    /// Determinant: Bareiss on exact backends, partially pivoted LU on floats.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        if T::EXACT {
            let mut prev = T::one();
            for k in 0..n {
                let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                if p != k {
                    swap_rows(&mut a, p, k);
                    negate = !negate;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                            / prev.clone();
                        a[(i, j)] = v;
                    }
                }
                prev = a[(k, k)].clone();
            }
            let d = a[(n - 1, n - 1)].clone();
            return Ok(if negate { -d } else { d });
        }
        let mut d = T::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].modulus().total_cmp(&a[(j, k)].modulus()))
                .unwrap();
            if a[(p, k)].is_zero() {
                return Ok(T::zero());
            }
            if p != k {
                swap_rows(&mut a, p, k);
                negate = !negate;
            }
            let piv = a[(k, k)].clone();
            d = d * piv.clone();
            for i in k + 1..n {
                let f = a[(i, k)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        Ok(if negate { -d } else { d })
    }

    /// Inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let tol = if T::EXACT { 0.0 } else { 1e-13 };
        let pivots = rref(&mut aug, tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(aug.select(&rows, &cols))
    }
}

impl<T: Field> Matrix<T> {
    /// One solution of `self * x = b` (free variables set to zero).
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let (rows, cols) = self.shape();
        if b.len() != rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {rows} rows",
                b.len()
            )));
        }
        let mut aug = Matrix::from_fn(rows, cols + 1, |i, j| {
            if j < cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let tol = if T::EXACT { 0.0 } else { 1e-12 };
        let pivots = rref(&mut aug, tol);
        if pivots.last() == Some(&cols) {
            return Err(Error::NotInSpan {
                residual: "inconsistent system".into(),
            });
        }
        let mut x = vec![T::zero(); cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, cols)].clone();
        }
        Ok(x)
    }
}

fn bareiss_rank<T: Field>(m: &Matrix<T>) -> usize {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (a[(r, c)].clone() * a[(i, j)].clone() - a[(i, c)].clone() * a[(r, j)].clone()) / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, c)] = T::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

fn complex_to<T: Field>(z: C64) -> T {
    T::from_complex(z).expect("float kernel requested for an exact scalar")
}

/// Full column rank basis of a subspace, in canonical reduced column
/// echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<T: Field> {
    ambient_dim: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Field> SubspaceBasis<T> {
    /// Canonical basis of the span of `vectors` (which may be dependent).
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<T>]) -> Self {
        let k = vectors.len();
        // rows = vectors with coordinates reversed, so that RREF pivots
        // land on the last nonzero coordinate
        let mut a = Matrix::from_fn(k, ambient_dim, |i, j| vectors[i][ambient_dim - 1 - j].clone());
        let tol = if T::EXACT { 0.0 } else { 1e-10 };
        let piv = rref(&mut a, tol);
        let r = piv.len();
        let mut cols: Vec<(usize, Vec<T>)> = (0..r)
            .map(|row| {
                let v = (0..ambient_dim)
                    .map(|j| a[(row, ambient_dim - 1 - j)].clone())
                    .collect();
                (ambient_dim - 1 - piv[row], v)
            })
            .collect();
        cols.sort_by_key(|(p, _)| *p);
        let pivots = cols.iter().map(|(p, _)| *p).collect();
        let vecs: Vec<Vec<T>> = cols.into_iter().map(|(_, v)| v).collect();
        let basis = Matrix::from_fn(ambient_dim, r, |i, j| vecs[j][i].clone());
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// Canonical basis of the column space of `m`.
    pub fn column_space(m: &Matrix<T>) -> Self {
        Self::from_spanning(m.rows(), &m.columns())
    }

    /// The whole ambient space (identity basis).
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.basis.column(j)
    }

    /// Coordinates `c` with `basis * c = v`.
    pub fn solve_in_span(&self, v: &[T]) -> Result<Vec<T>> {
        self.solve_in_span_tol(v, FLOAT_CHECK_TOL)
    }

    /// As [`solve_in_span`](Self::solve_in_span) with an explicit relative
    /// residual tolerance for the float backend.
    pub fn solve_in_span_tol(&self, v: &[T], rel_tol: f64) -> Result<Vec<T>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        // pivot rows of a canonical basis form an identity block
        let c: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&c)?;
        let residual: Vec<T> = back.into_iter().zip(v).map(|(a, b)| a - b.clone()).collect();
        if T::EXACT {
            if residual.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotInSpan {
                    residual: "nonzero".into(),
                });
            }
        } else {
            let r = residual.iter().map(Field::modulus).fold(0.0, f64::max);
            let scale = v.iter().map(Field::modulus).fold(1.0, f64::max);
            if r > rel_tol * scale {
                return Err(Error::NotInSpan {
                    residual: format!("{r:e}"),
                });
            }
        }
        Ok(c)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.solve_in_span(v).is_ok()
    }

    /// Coordinates of every column of `m`.
    pub fn coordinates_of(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        let cols = m
            .columns()
            .iter()
            .map(|c| self.solve_in_span(c))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Compression `Q* A Q` of a square ambient operator.
    pub fn compress(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        self.basis.conj_transpose().mul(a)?.mul(&self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(Matrix::<Rational>::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let z = Matrix::<Rational>::zeros(2, 2).kernel_basis();
        assert_eq!(z.matrix(), &Matrix::identity(2));
        assert_eq!(Matrix::<Rational>::identity(2).kernel_basis().dim(), 0);
        let k = m(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k.dim(), 1);
        // canonical: last nonzero entry is 1
        assert_eq!(k.column(0), vec![q(-1), q(1)]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::<Rational>::identity(4).det().unwrap(), q(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), q(-1));
        assert_eq!(m(&[&[-1, 1], &[-2, 1]]).det().unwrap(), q(1));
        assert!(m(&[&[1, 2]]).det().is_err());
        let f = m(&[&[2, 1], &[1, 3]]).to_complex();
        assert!((f.det().unwrap() - C64::new(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn solve_in_span_cases() {
        let b = SubspaceBasis::from_spanning(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        assert_eq!(b.solve_in_span(&b.column(0)).unwrap(), vec![q(1), q(0)]);
        assert_eq!(b.solve_in_span(&[q(0), q(0), q(0)]).unwrap(), vec![q(0), q(0)]);
        assert!(matches!(
            b.solve_in_span(&[q(0), q(0), q(1)]),
            Err(Error::NotInSpan { .. })
        ));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = SubspaceBasis::from_spanning(3, &[vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]]);
        let b = SubspaceBasis::from_spanning(
            3,
            &[vec![q(1), q(3), q(4)], vec![q(2), q(5), q(7)], vec![q(1), q(2), q(3)]],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(a.solve(&[q(3), q(1), q(4)]).unwrap(), vec![q(2), q(1)]);
        assert!(a.solve(&[q(3), q(1), q(5)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn float_kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]).to_complex();
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.dim(), 2);
        for j in 0..2 {
            let r = a.mul_vec(&k.column(j)).unwrap();
            assert!(r.iter().all(|z| z.norm() < 1e-12));
        }
    }
}
