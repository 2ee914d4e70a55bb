#![allow(dead_code)]

use curvelim::detrep::CurvePoint;
use curvelim::poly::{num_monomials, HomPoly3, UniPoly};
use curvelim::scalar::q;
use curvelim::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn hp(s: &str) -> HomPoly3<Rational> {
    HomPoly3::parse(s).unwrap()
}

pub fn up(s: &str) -> UniPoly<Rational> {
    UniPoly::parse(s, None).unwrap()
}

pub fn pt(c: [i64; 3]) -> CurvePoint<Rational> {
    CurvePoint::new(c.map(q)).unwrap()
}

/// Distinct rational points `(s^2 + t^2, 2st, s^2 - t^2)` on the conic
/// `x0^2 = x1^2 + x2^2`.
pub fn conic_points(count: usize) -> Vec<CurvePoint<Rational>> {
    let mut out = Vec::new();
    'outer: for s in 1..20i64 {
        for t in -12..13i64 {
            if out.len() == count {
                break 'outer;
            }
            if num_integer::gcd(s, t) == 1 {
                let p = pt([s * s + t * t, 2 * s * t, s * s - t * t]);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    assert_eq!(out.len(), count);
    out
}

pub fn rand_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    q(rng.random_range(-bound..=bound))
}

/// Random univariate polynomial of declared degree `n`, leading
/// coefficient nonzero.
pub fn random_uni(rng: &mut ChaCha8Rng, n: usize) -> UniPoly<Rational> {
    let mut c: Vec<Rational> = (0..=n).map(|_| rand_int(rng, 9)).collect();
    if c[n] == q(0) {
        c[n] = q(1);
    }
    UniPoly::new(c).unwrap()
}

/// Random nonzero form of degree `n` with small integer coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize) -> HomPoly3<Rational> {
    loop {
        let c: Vec<Rational> = (0..num_monomials(n)).map(|_| rand_int(rng, 5)).collect();
        let p = HomPoly3::from_coeffs(n, c).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// Product of `(x - r)` over the given integer roots, times `lead`.
pub fn from_roots(lead: i64, roots: &[i64]) -> UniPoly<Rational> {
    let mut p = UniPoly::new(vec![q(lead)]).unwrap();
    for &r in roots {
        p = p.mul(&UniPoly::new(vec![q(-r), q(1)]).unwrap());
    }
    p
}

/// The line through two points, as a linear form.
pub fn line_through(a: &CurvePoint<Rational>, b: &CurvePoint<Rational>) -> HomPoly3<Rational> {
    let (x, y) = (a.coords(), b.coords());
    HomPoly3::linear([
        x[1].clone() * &y[2] - &x[2] * &y[1],
        x[2].clone() * &y[0] - &x[0] * &y[2],
        x[0].clone() * &y[1] - &x[1] * &y[0],
    ])
}
