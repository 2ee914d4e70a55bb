//! Classical elimination for univariate polynomials and the image of the
//! projective line under a rational map.
//!
//! For polynomials `p, q` of declared degree `n` the Bezout matrix `B(p, q)`
//! is the unique `n x n` matrix with
//!
//! ```text
//! p(x) q(y) - q(x) p(y) = sum_ij b_ij x^i (x - y) y^j.
//! ```

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::scalar::Field;

/// Vandermonde vector of order `k`: entry `i` is `d^k/dx^k x^i` at `x`.
pub fn vandermonde<T: Field>(x: &T, n: usize, k: usize) -> Vec<T> {
    (0..n)
        .map(|i| {
            if i < k {
                return T::zero();
            }
            let falling: i64 = (i - k + 1..=i).map(|v| v as i64).product();
            T::from_i64(falling) * x.pow((i - k) as u32)
        })
        .collect()
}

/// Matrix of shifts: row `k` holds the coefficients of `x^k p(x)`,
/// columns indexed by degree `0..2n`.
pub fn shift_matrix<T: Field>(p: &UniPoly<T>) -> Result<Matrix<T>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidInput("shift matrix needs degree at least 1".into()));
    }
    Ok(Matrix::from_fn(n, 2 * n, |k, c| {
        if c >= k && c - k <= n {
            p.coeff(c - k)
        } else {
            T::zero()
        }
    }))
}

fn same_degree<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    let n = p.degree();
    if p.coeff(n).is_zero() && q.coeff(n).is_zero() {
        log::warn!("both leading coefficients vanish: a common zero sits at infinity");
    }
    Ok(n)
}

/// Sylvester matrix: the shift matrices of `p` and `q` stacked.
pub fn sylvester<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<Matrix<T>> {
    same_degree(p, q)?;
    Matrix::vstack(&[&shift_matrix(p)?, &shift_matrix(q)?])
}

pub fn resultant<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<T> {
    sylvester(p, q)?.det()
}

/// Bezout matrix by solving the defining identity coefficientwise.
pub fn bezout<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<Matrix<T>> {
    let n = same_degree(p, q)?;
    let eqs = (n + 1) * (n + 1);
    // unknown b_ij sits at column i*n + j; equation (a, b) collects x^a y^b
    let mut a = Matrix::zeros(eqs, n * n);
    for i in 0..n {
        for j in 0..n {
            a[((i + 1) * (n + 1) + j, i * n + j)] = T::one();
            a[(i * (n + 1) + j + 1, i * n + j)] = -T::one();
        }
    }
    let rhs: Vec<T> = (0..eqs)
        .map(|e| {
            let (x, y) = (e / (n + 1), e % (n + 1));
            p.coeff(x) * q.coeff(y) - q.coeff(x) * p.coeff(y)
        })
        .collect();
    let b = a.solve(&rhs)?;
    let out = Matrix::new(n, n, b)?;
    debug_assert!(bezout_identity_holds(p, q, &out));
    Ok(out)
}

/// Bezout matrix assembled term by term from
/// `x^i y^j - x^j y^i = x^j y^j (x - y) sum_k x^(i-j-k) y^(k-1)`.
pub fn bezout_telescoping<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<Matrix<T>> {
    let n = same_degree(p, q)?;
    let mut b: Matrix<T> = Matrix::zeros(n, n);
    for i in 0..=n {
        for j in 0..=n {
            let c = p.coeff(i) * q.coeff(j);
            if c.is_zero() || i == j {
                continue;
            }
            let (hi, lo, c) = if i > j { (i, j, c) } else { (j, i, -c) };
            for k in 1..=hi - lo {
                let v = b[(hi - k, lo + k - 1)].clone() + c.clone();
                b[(hi - k, lo + k - 1)] = v;
            }
        }
    }
    Ok(b)
}

/// Checks the defining identity by comparing all coefficients of the
/// bivariate polynomial on both sides.
pub fn bezout_identity_holds<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>, b: &Matrix<T>) -> bool {
    let n = p.degree();
    if b.shape() != (n, n) {
        return false;
    }
    let mut lhs = vec![vec![T::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            let v = &b[(i, j)];
            lhs[i + 1][j] = lhs[i + 1][j].clone() + v.clone();
            lhs[i][j + 1] = lhs[i][j + 1].clone() - v.clone();
        }
    }
    (0..=n).all(|x| {
        (0..=n).all(|y| {
            let r = p.coeff(x) * q.coeff(y) - q.coeff(x) * p.coeff(y);
            lhs[x][y] == r
        })
    })
}

/// The `n x n` exchange matrix with ones on the antidiagonal.
pub fn exchange_matrix<T: Field>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { T::one() } else { T::zero() })
}

/// `[[0, -B], [B, 0]]`.
pub fn skew_block<T: Field>(b: &Matrix<T>) -> Result<Matrix<T>> {
    let z = Matrix::zeros(b.rows(), b.cols());
    Matrix::block2(&z, &b.neg(), b, &z)
}

/// Both sides of the identity linking Sylvester and Bezout matrices:
///
/// ```text
/// S(p,q)^T [[0, -B(f,g)], [B(f,g), 0]] S(p,q) = S(f,g)^T [[0, -B(p,q)], [B(p,q), 0]] S(f,g)
/// ```
pub fn kravitsky_sides<T: Field>(
    p: &UniPoly<T>,
    q: &UniPoly<T>,
    f: &UniPoly<T>,
    g: &UniPoly<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    for r in [q, f, g] {
        same_degree(p, r)?;
    }
    let s_pq = sylvester(p, q)?;
    let s_fg = sylvester(f, g)?;
    let lhs = s_pq.transpose().mul(&skew_block(&bezout(f, g)?)?)?.mul(&s_pq)?;
    let rhs = s_fg.transpose().mul(&skew_block(&bezout(p, q)?)?)?.mul(&s_fg)?;
    Ok((lhs, rhs))
}

pub fn kravitsky_check<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>, f: &UniPoly<T>, g: &UniPoly<T>) -> Result<bool> {
    let (lhs, rhs) = kravitsky_sides(p, q, f, g)?;
    Ok(matrices_agree(&lhs, &rhs))
}

/// The specialization `f = 1, g = x^n`:
/// `S^T [[0, -J], [J, 0]] S = [[0, B], [-B, 0]]` with `J` the exchange matrix.
pub fn kravitsky_exchange_check<T: Field>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<bool> {
    let n = same_degree(p, q)?;
    let s = sylvester(p, q)?;
    let lhs = s.transpose().mul(&skew_block(&exchange_matrix(n))?)?.mul(&s)?;
    let b = bezout(p, q)?;
    let z = Matrix::zeros(n, n);
    let rhs = Matrix::block2(&z, &b, &b.neg(), &z)?;
    Ok(matrices_agree(&lhs, &rhs))
}

/// Exact equality, or agreement to a relative `1e-9` on the float backend.
pub(crate) fn matrices_agree<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    if T::EXACT {
        return a == b;
    }
    let scale = a.max_modulus().max(b.max_modulus()).max(1.0);
    a.sub(b).map(|d| d.max_modulus() <= 1e-9 * scale).unwrap_or(false)
}

/// Pencil `(M0, M1, M2)` whose determinant vanishes on the image of the
/// projective line under `(s : t) -> (p0 : p1 : p2)`:
/// `M0 = B(p1, p2)`, `M1 = B(p2, p0)`, `M2 = B(p0, p1)`.
///
/// The forms are binary forms with coefficient `i` on `s^(n-i) t^i`.
pub fn line_image_pencil<T: Field>(p: &[UniPoly<T>; 3]) -> Result<[Matrix<T>; 3]> {
    let n = p[0].degree();
    for r in &p[1..] {
        if r.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: r.degree(),
            });
        }
    }
    if p.iter().all(UniPoly::is_zero) {
        return Err(Error::InvalidInput("all three forms vanish".into()));
    }
    Ok([bezout(&p[1], &p[2])?, bezout(&p[2], &p[0])?, bezout(&p[0], &p[1])?])
}

/// Homogeneous Vandermonde vector `(s^(n-1), s^(n-2) t, ..., t^(n-1))`.
pub fn binary_vandermonde<T: Field>(s: &T, t: &T, n: usize) -> Vec<T> {
    (0..n).map(|i| s.pow((n - 1 - i) as u32) * t.pow(i as u32)).collect()
}
