//! Elimination along a curve `det(x0 D0 + x1 D1 + x2 D2) = 0`.
//!
//! The blown space `W_n` has coordinates indexed by pairs (monomial `i` of
//! degree `n - 1`, fiber index `0..m`), flattened as `pos(i) * m + k` with
//! `pos` the [`MonomialOrder`] position. The principal subspace `V_n` is the
//! set of `w` with
//!
//! ```text
//! D0 w[j + e0] + D1 w[j + e1] + D2 w[j + e2] = 0   for all |j| = n - 2,
//! ```
//!
//! and has dimension `n m`. Vandermonde vectors `(x^i e)_{|i| = n-1}` at curve
//! points lie in it and span it.

mod bezout;
mod pairing;

pub use bezout::{decomposition_identity_holds, hom_bezout_decomposition, BezoutTriple};
pub use pairing::{common_value, pairing_expressions, PairingConvention, PairingTerm};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector};

use crate::detrep::{CurvePoint, DetRep, PointWithKernel};
use crate::error::{Error, Result};
use crate::linalg::SubspaceBasis;
use crate::matrix::Matrix;
use crate::poly::{num_monomials, HomPoly3, MonomialOrder, MultiIndex3};
use crate::scalar::{Field, Rational, C64};

/// Dimension of the blown space `W_n` over an `m`-dimensional fiber.
pub fn blown_dim(n: usize, m: usize) -> usize {
    assert!(n >= 1, "level starts at 1");
    num_monomials(n - 1) * m
}

/// The principal subspace `V_n` with its canonical basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSubspace<T: Field> {
    pub n: usize,
    pub m: usize,
    pub basis: SubspaceBasis<T>,
}

/// Elimination context for one determinantal representation. Principal
/// subspaces are computed once per level and shared.
#[derive(Debug)]
pub struct CurveElim<T: Field> {
    rep: DetRep<T>,
    cache: Mutex<HashMap<usize, Arc<PrincipalSubspace<T>>>>,
}

impl<T: Field> Clone for CurveElim<T> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Self {
            rep: self.rep.clone(),
            cache: Mutex::new(cache),
        }
    }
}

fn degree_check<T: Field>(p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput("forms of degree 0 have no shifts".into()));
    }
    Ok(p.degree())
}

impl<T: Field> CurveElim<T> {
    pub fn new(rep: DetRep<T>) -> Self {
        Self {
            rep,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rep(&self) -> &DetRep<T> {
        &self.rep
    }

    pub fn m(&self) -> usize {
        self.rep.m()
    }

    /// Block rows `D0 w[j+e0] + D1 w[j+e1] + D2 w[j+e2]` for `|j| = n - 2`.
    pub fn principal_constraints(&self, n: usize) -> Matrix<T> {
        let m = self.m();
        let cols = blown_dim(n, m);
        if n < 2 {
            return Matrix::zeros(0, cols);
        }
        let rows_idx = MonomialOrder::new(n - 2);
        let mut a = Matrix::zeros(rows_idx.len() * m, cols);
        for (bj, j) in rows_idx.iter().enumerate() {
            for k in 0..3 {
                let col_block = j.add(MultiIndex3::unit(k)).position();
                let d = self.rep.d(k);
                for r in 0..m {
                    for c in 0..m {
                        a[(bj * m + r, col_block * m + c)] = d[(r, c)].clone();
                    }
                }
            }
        }
        a
    }

    /// `V_n`, cached. Fails with `TheoremViolation` when `dim V_n != n m`.
    pub fn principal_subspace(&self, n: usize) -> Result<Arc<PrincipalSubspace<T>>> {
        if n == 0 {
            return Err(Error::InvalidInput("level must be at least 1".into()));
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(v.clone());
        }
        let basis = self.principal_constraints(n).kernel_basis();
        let m = self.m();
        if basis.dim() != n * m {
            return Err(Error::TheoremViolation(format!(
                "principal subspace at level {n} has dimension {}, expected {}",
                basis.dim(),
                n * m
            )));
        }
        let v = Arc::new(PrincipalSubspace { n, m, basis });
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(n).or_insert(v).clone())
    }

    /// Order-0 Vandermonde vector `(x^i e)_{|i| = n-1}` in `W_n`.
    pub fn curve_vandermonde(&self, pk: &PointWithKernel<T>, n: usize) -> Vec<T> {
        vandermonde_blocks(pk.x(), &pk.e, n)
    }

    /// Matrix of shifts `T(p)`: row `i` (`|i| = n - 1`) is the coefficient
    /// vector of `x^i p` in degree `2n - 1`.
    pub fn trivariate_shift_matrix(p: &HomPoly3<T>) -> Matrix<T> {
        let n = p.degree();
        let rows = MonomialOrder::new(n - 1);
        let cols = num_monomials(2 * n - 1);
        let mut t = Matrix::zeros(rows.len(), cols);
        for (r, i) in rows.iter().enumerate() {
            for (j, c) in p.terms() {
                t[(r, i.add(j).position())] = c.clone();
            }
        }
        t
    }

    /// `T(p) (x) I_m`, acting from `W_2n` to `W_n`.
    pub fn blown_shift(&self, p: &HomPoly3<T>) -> Matrix<T> {
        Self::trivariate_shift_matrix(p).kron(&Matrix::identity(self.m()))
    }

    /// `T'(p)`: the blown shift restricted to `V_2n`, in the canonical
    /// coordinates of `V_2n` (columns) and `V_n` (rows).
    pub fn generalized_shift(&self, p: &HomPoly3<T>) -> Result<Matrix<T>> {
        let n = p.degree();
        if n == 0 {
            return Err(Error::InvalidInput("forms of degree 0 have no shifts".into()));
        }
        let vn = self.principal_subspace(n)?;
        let v2n = self.principal_subspace(2 * n)?;
        let image = self.blown_shift(p).mul(v2n.basis.matrix())?;
        vn.basis.coordinates_of(&image).map_err(|e| match e {
            Error::NotInSpan { residual } => {
                Error::TheoremViolation(format!("blown shift does not map V_2n into V_n (residual {residual})"))
            }
            other => other,
        })
    }

    /// Sylvester matrix along the curve: `T'(p)` stacked over `T'(q)`.
    pub fn generalized_sylvester(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<Matrix<T>> {
        degree_check(p, q)?;
        Matrix::vstack(&[&self.generalized_shift(p)?, &self.generalized_shift(q)?])
    }

    /// `2nm - rank S'(p, q)`.
    pub fn count_common_zeros_sylvester(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<usize> {
        let s = self.generalized_sylvester(p, q)?;
        Ok(s.cols() - s.rank())
    }

    /// Bezout matrix on `W_n`: `b12 (x) D0 + b20 (x) D1 - b10 (x) D2`.
    pub fn blown_bezout(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<Matrix<T>> {
        degree_check(p, q)?;
        let t = hom_bezout_decomposition(p, q)?;
        let d = self.rep.matrices();
        t.b12.kron(&d[0]).add(&t.b20.kron(&d[1]))?.sub(&t.b10.kron(&d[2]))
    }

    /// `B'(p, q) = Q* B(p, q) Q` for the canonical basis `Q` of `V_n`.
    pub fn restricted_bezout(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<Matrix<T>> {
        let b = self.blown_bezout(p, q)?;
        self.principal_subspace(p.degree())?.basis.compress(&b)
    }

    /// `nm - rank B'(p, q)`.
    pub fn count_common_zeros_bezout(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<usize> {
        let b = self.restricted_bezout(p, q)?;
        Ok(b.cols() - b.rank())
    }

    /// Both counts.
    pub fn curve_count(&self, p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<CurveCount> {
        let n = degree_check(p, q)?;
        Ok(CurveCount {
            n,
            m: self.m(),
            sylvester_count: self.count_common_zeros_sylvester(p, q)?,
            bezout_count: self.count_common_zeros_bezout(p, q)?,
        })
    }

    /// Both sides of
    /// `S'^T(p,q) [[0,-B'(f,g)],[B'(f,g),0]] S'(p,q) = S'^T(f,g) [[0,-B'(p,q)],[B'(p,q),0]] S'(f,g)`.
    pub fn generalized_kravitsky_sides(
        &self,
        p: &HomPoly3<T>,
        q: &HomPoly3<T>,
        f: &HomPoly3<T>,
        g: &HomPoly3<T>,
    ) -> Result<(Matrix<T>, Matrix<T>)> {
        for r in [q, f, g] {
            degree_check(p, r)?;
        }
        let side = |a: &HomPoly3<T>, b: &HomPoly3<T>, c: &HomPoly3<T>, d: &HomPoly3<T>| -> Result<Matrix<T>> {
            let s = self.generalized_sylvester(a, b)?;
            let bz = self.restricted_bezout(c, d)?;
            let z = Matrix::zeros(bz.rows(), bz.cols());
            let mid = Matrix::block2(&z, &bz.neg(), &bz, &z)?;
            s.transpose().mul(&mid)?.mul(&s)
        };
        Ok((side(p, q, f, g)?, side(f, g, p, q)?))
    }

    pub fn generalized_kravitsky_check(
        &self,
        p: &HomPoly3<T>,
        q: &HomPoly3<T>,
        f: &HomPoly3<T>,
        g: &HomPoly3<T>,
    ) -> Result<bool> {
        let (l, r) = self.generalized_kravitsky_sides(p, q, f, g)?;
        Ok(crate::classical::matrices_agree(&l, &r))
    }

    /// Checks `V(x,e)^T B(p,q) V(y,h) = (p(x) q(y) - q(x) p(y)) [e,h]_{x,y}`
    /// in the ambient blown space.
    pub fn bezout_vandermonde_identity_check(
        &self,
        p: &HomPoly3<T>,
        q: &HomPoly3<T>,
        pk1: &PointWithKernel<T>,
        pk2: &PointWithKernel<T>,
    ) -> Result<bool> {
        let n = degree_check(p, q)?;
        let b = self.blown_bezout(p, q)?;
        let vx = self.curve_vandermonde(pk1, n);
        let vy = self.curve_vandermonde(pk2, n);
        let lhs = crate::matrix::dot(&vx, &b.mul_vec(&vy)?);
        let (x, y) = (pk1.x(), pk2.x());
        let form = p.evaluate(x) * q.evaluate(y) - q.evaluate(x) * p.evaluate(y);
        let rhs = form * self.pairing(pk1, pk2)?;
        Ok(scalars_agree(&lhs, &rhs))
    }

    /// The common value `[e,h]_{x,y}` of `e^T D_i h / K_i(x, y)` with
    /// `K = x * y` (cross product). Every expression with a nonzero
    /// denominator is evaluated and their agreement asserted.
    pub fn pairing(&self, pk1: &PointWithKernel<T>, pk2: &PointWithKernel<T>) -> Result<T> {
        let terms = pairing_expressions(&self.rep, pk1, pk2, PairingConvention::CrossProduct)?;
        pairing::common_value(&terms)
    }

    /// Whether the Vandermonde vectors at the intersections of the curve
    /// with `prod L_i` have rank `nm` and lie in `V_n`.
    pub fn vandermonde_generation_from_points(&self, points: &[Vec<CurvePoint<T>>]) -> Result<bool> {
        let n = points.len();
        let m = self.m();
        let all: Vec<&CurvePoint<T>> = points.iter().flatten().collect();
        if points.iter().any(|ps| ps.len() != m) {
            return Err(Error::NonGeneric(
                "a line does not meet the curve in m available points".into(),
            ));
        }
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                if points_coincide(all[a], all[b]) {
                    return Err(Error::NonGeneric("intersection points are not distinct".into()));
                }
            }
        }
        let vn = self.principal_subspace(n)?;
        let mut vecs = Vec::with_capacity(all.len());
        for p in all {
            let pk = self.rep.kernel_at(p)?;
            let v = self.curve_vandermonde(&pk, n);
            if !vn.basis.contains(&v) {
                return Ok(false);
            }
            vecs.push(v);
        }
        let mat = Matrix::from_columns(blown_dim(n, m), &vecs)?;
        let rank = if T::EXACT {
            mat.rank()
        } else {
            mat.rank_with_tol(Some(1e-9))
        };
        Ok(rank == n * m)
    }
}

impl CurveElim<Rational> {
    /// Generation check with exact rational intersection points.
    pub fn vandermonde_generation_check(&self, lines: &[[Rational; 3]]) -> Result<bool> {
        let pts = lines
            .iter()
            .map(|l| self.rep.sample_points(l))
            .collect::<Result<Vec<_>>>()?;
        self.vandermonde_generation_from_points(&pts)
    }
}

impl CurveElim<C64> {
    /// Generation check with numerically computed intersection points.
    pub fn vandermonde_generation_check(&self, lines: &[[C64; 3]]) -> Result<bool> {
        let pts = lines
            .iter()
            .map(|l| self.rep.sample_points_complex(l))
            .collect::<Result<Vec<_>>>()?;
        self.vandermonde_generation_from_points(&pts)
    }

    /// Order-1 Vandermonde vector: the derivative of `x(t)^i e(t)` along a
    /// local parametrization of the curve through a smooth point.
    ///
    /// In the chart where the largest coordinate `x_c` is held at 1 the
    /// tangent is `x'_a = g_b, x'_b = -g_a` with `g` the gradient of the
    /// determinant. The kernel derivative solves `A(x) e' = -A(x') e`,
    /// `e^T e' = 0` in the least squares sense.
    pub fn curve_vandermonde_order1(&self, pk: &PointWithKernel<C64>, n: usize) -> Result<Vec<C64>> {
        let x0 = pk.x();
        let c = (0..3)
            .max_by(|&a, &b| x0[a].norm().total_cmp(&x0[b].norm()))
            .expect("three coordinates");
        let s = x0[c];
        let x = x0.map(|v| v / s);
        let e = &pk.e;
        let delta = self.rep.det_poly();
        let g: Vec<C64> = (0..3).map(|k| delta.partial(k).evaluate(&x)).collect();
        let others: Vec<usize> = (0..3).filter(|&k| k != c).collect();
        let (a, b) = (others[0], others[1]);
        let gscale = delta.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        if g[a].norm() <= 1e-10 * gscale && g[b].norm() <= 1e-10 * gscale {
            return Err(Error::Unsupported(
                "order-1 Vandermonde vector at a singular point".into(),
            ));
        }
        let mut xd = [C64::new(0.0, 0.0); 3];
        xd[a] = g[b];
        xd[b] = -g[a];
        let m = self.m();
        let ax = self.rep.pencil_at(&x);
        let axd = self.rep.pencil_at(&xd);
        let rhs_top = axd.mul_vec(e)?;
        let sys = DMatrix::from_fn(m + 1, m, |i, j| if i < m { ax[(i, j)] } else { e[j] });
        let rhs = DVector::from_fn(m + 1, |i, _| if i < m { -rhs_top[i] } else { C64::new(0.0, 0.0) });
        let ed = sys
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|msg| Error::Unsupported(msg.to_string()))?;
        let order = MonomialOrder::new(n - 1);
        let mut out = Vec::with_capacity(order.len() * m);
        for i in order.iter() {
            let xi = monomial_value(&x, i);
            let mut dxi = C64::new(0.0, 0.0);
            for (k, xdk) in xd.iter().enumerate() {
                if let Some(lower) = i.checked_sub(MultiIndex3::unit(k)) {
                    dxi += C64::new(i.get(k) as f64, 0.0) * monomial_value(&x, lower) * xdk;
                }
            }
            for r in 0..m {
                out.push(dxi * e[r] + xi * ed[r]);
            }
        }
        Ok(out)
    }
}

/// Kernel dimensions of the two elimination matrices along the curve.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CurveCount {
    pub n: usize,
    pub m: usize,
    pub sylvester_count: usize,
    pub bezout_count: usize,
}

impl CurveCount {
    pub fn agree(&self) -> bool {
        self.sylvester_count == self.bezout_count
    }
}

pub(crate) fn monomial_value<T: Field>(x: &[T; 3], i: MultiIndex3) -> T {
    x[0].pow(i.i0 as u32) * x[1].pow(i.i1 as u32) * x[2].pow(i.i2 as u32)
}

/// `(x^i e)_{|i| = n-1}` flattened in blown-space order.
pub fn vandermonde_blocks<T: Field>(x: &[T; 3], e: &[T], n: usize) -> Vec<T> {
    let order = MonomialOrder::new(n - 1);
    let mut out = Vec::with_capacity(order.len() * e.len());
    for i in order.iter() {
        let xi = monomial_value(x, i);
        out.extend(e.iter().map(|c| xi.clone() * c.clone()));
    }
    out
}

fn points_coincide<T: Field>(a: &CurvePoint<T>, b: &CurvePoint<T>) -> bool {
    let (x, y) = (a.coords(), b.coords());
    if T::EXACT {
        return x == y;
    }
    x.iter().zip(y).all(|(u, v)| (u.clone() - v.clone()).modulus() <= 1e-8)
}

pub(crate) fn scalars_agree<T: Field>(a: &T, b: &T) -> bool {
    if T::EXACT {
        return a == b;
    }
    let scale = a.modulus().max(b.modulus()).max(1.0);
    (a.clone() - b.clone()).modulus() <= 1e-9 * scale
}

#[cfg(test)]
mod tests;
