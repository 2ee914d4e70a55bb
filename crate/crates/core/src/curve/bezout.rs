//! Decomposition of `p(x) q(y) - q(x) p(y)` over the three kernels
//!
//! ```text
//! K10 = x1 y0 - x0 y1,   K20 = x2 y0 - x0 y2,   K12 = x1 y2 - x2 y1
//! ```
//!
//! as `sum_ij b10[i,j] x^i K10 y^j + b20[..] x^i K20 y^j + b12[..] x^i K12 y^j`
//! with `|i| = |j| = n - 1`.

use std::collections::HashMap;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::poly::{num_monomials, HomPoly3, MultiIndex3};
use crate::scalar::Field;

/// Coefficient matrices of a kernel decomposition, indexed by
/// [`crate::poly::MonomialOrder`] positions of degree `n - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutTriple<T: Field> {
    pub n: usize,
    pub b10: Matrix<T>,
    pub b20: Matrix<T>,
    pub b12: Matrix<T>,
}

/// Sorted list of variables with multiplicity, e.g. `(2,0,1) -> [0,0,2]`.
fn variable_list(a: MultiIndex3) -> Vec<usize> {
    (0..3).flat_map(|k| std::iter::repeat_n(k, a.get(k))).collect()
}

/// A symmetric decomposition built by telescoping each monomial pair.
///
/// For `a != b` with `g = min(a, b)`, `x^a y^b - x^b y^a` is
/// `x^g y^g (x^A y^B - x^B y^A)` with disjoint supports. Swapping one
/// variable at a time, `x^A y^B - x^{A-e_r+e_s} y^{B-e_s+e_r}` equals
/// `x^{A-e_r} (x_r y_s - x_s y_r) y^{B-e_s}`, and each binomial kernel is
/// one of `±K10, ±K20, ±K12`. The result is averaged with its transpose,
/// which is again a decomposition because the left side is antisymmetric.
pub fn hom_bezout_decomposition<T: Field>(p: &HomPoly3<T>, q: &HomPoly3<T>) -> Result<BezoutTriple<T>> {
    if p.degree() != q.degree() {
        return Err(crate::Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    let n = p.degree();
    if n == 0 {
        return Err(crate::Error::InvalidInput(
            "forms of degree 0 have no Bezout matrix".into(),
        ));
    }
    let size = num_monomials(n - 1);
    let mut mats: [Matrix<T>; 3] = [
        Matrix::zeros(size, size),
        Matrix::zeros(size, size),
        Matrix::zeros(size, size),
    ];
    for (a, pa) in p.terms() {
        for (b, qb) in q.terms() {
            if a == b {
                continue;
            }
            let coef = pa.clone() * qb.clone();
            let g = a.min(b);
            let alpha = a.checked_sub(g).expect("g <= a");
            let beta = b.checked_sub(g).expect("g <= b");
            let (al, bl) = (variable_list(alpha), variable_list(beta));
            let (mut big_a, mut big_b) = (alpha, beta);
            for (&r, &s) in al.iter().zip(&bl) {
                let (slot, sign) = match (r, s) {
                    (1, 2) => (2, 1),
                    (2, 1) => (2, -1),
                    (1, 0) => (0, 1),
                    (0, 1) => (0, -1),
                    (2, 0) => (1, 1),
                    (0, 2) => (1, -1),
                    _ => unreachable!("supports are disjoint"),
                };
                let er = MultiIndex3::unit(r);
                let es = MultiIndex3::unit(s);
                let row = g.add(big_a).checked_sub(er).expect("r in A").position();
                let col = g.add(big_b).checked_sub(es).expect("s in B").position();
                let c = if sign > 0 { coef.clone() } else { -coef.clone() };
                mats[slot][(row, col)] = mats[slot][(row, col)].clone() + c;
                big_a = big_a.checked_sub(er).expect("r in A").add(es);
                big_b = big_b.checked_sub(es).expect("s in B").add(er);
            }
        }
    }
    let half = T::one() / T::from_i64(2);
    let sym = |m: &Matrix<T>| m.add(&m.transpose()).expect("square").scale(&half);
    let t = BezoutTriple {
        n,
        b10: sym(&mats[0]),
        b20: sym(&mats[1]),
        b12: sym(&mats[2]),
    };
    debug_assert!(decomposition_identity_holds(p, q, &t));
    Ok(t)
}

type Poly6<T> = HashMap<[usize; 6], T>;

fn add_term<T: Field>(acc: &mut Poly6<T>, key: [usize; 6], c: T) {
    let e = acc.entry(key).or_insert_with(T::zero);
    *e = e.clone() + c;
}

fn key(x: MultiIndex3, y: MultiIndex3) -> [usize; 6] {
    [x.i0, x.i1, x.i2, y.i0, y.i1, y.i2]
}

fn is_negligible<T: Field>(c: &T, scale: f64) -> bool {
    if T::EXACT {
        c.is_zero()
    } else {
        c.modulus() <= 1e-9 * scale
    }
}

/// Expands both sides in the six variables `x, y` and compares them.
pub fn decomposition_identity_holds<T: Field>(p: &HomPoly3<T>, q: &HomPoly3<T>, t: &BezoutTriple<T>) -> bool {
    let n = t.n;
    let mut diff: Poly6<T> = HashMap::new();
    for (a, pa) in p.terms() {
        for (b, qb) in q.terms() {
            let c = pa.clone() * qb.clone();
            add_term(&mut diff, key(a, b), c.clone());
            add_term(&mut diff, key(b, a), -c);
        }
    }
    // kernel (x_r y_s - x_s y_r) for each slot
    let kernels = [(&t.b10, 1, 0), (&t.b20, 2, 0), (&t.b12, 1, 2)];
    let size = num_monomials(n - 1);
    for (mat, r, s) in kernels {
        let (er, es) = (MultiIndex3::unit(r), MultiIndex3::unit(s));
        for i in 0..size {
            for j in 0..size {
                let c = mat[(i, j)].clone();
                if c.is_zero() {
                    continue;
                }
                let xi = MultiIndex3::from_position(n - 1, i);
                let yj = MultiIndex3::from_position(n - 1, j);
                add_term(&mut diff, key(xi.add(er), yj.add(es)), -c.clone());
                add_term(&mut diff, key(xi.add(es), yj.add(er)), c);
            }
        }
    }
    let scale = p.coeffs().iter().map(Field::modulus).fold(0.0, f64::max)
        * q.coeffs().iter().map(Field::modulus).fold(0.0, f64::max);
    diff.values().all(|c| is_negligible(c, scale.max(1.0)))
}
