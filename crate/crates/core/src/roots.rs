//! Roots of univariate polynomials: exact rational roots and numerical
//! complex roots.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::UniPoly;
use crate::scalar::{Rational, C64};

/// Largest constant-term or leading-coefficient magnitude whose divisors
/// are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// Distinct rational roots with their multiplicities, in increasing order.
///
/// Returns `None` when the coefficients are too large for divisor
/// enumeration. The zero polynomial has no roots by convention.
pub fn rational_roots(p: &UniPoly<Rational>) -> Option<Vec<(Rational, usize)>> {
    let mut c: Vec<Rational> = p.coeffs().to_vec();
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let zeros = c.iter().take_while(|v| v.is_zero()).count();
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
        c.drain(..zeros);
    }
    let ints = integer_coefficients(&c);
    let lead = ints.last().expect("nonempty").abs();
    let constant = ints[0].abs();
    let num_divs = divisors(&constant)?;
    let den_divs = divisors(&lead)?;
    let mut candidates: Vec<Rational> = Vec::new();
    for a in &num_divs {
        for b in &den_divs {
            let r = Rational::new(a.clone(), b.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let mut mult = 0;
        while c.len() > 1 {
            let (q, rem) = deflate(&c, &r);
            if !rem.is_zero() {
                break;
            }
            c = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

fn integer_coefficients(c: &[Rational]) -> Vec<BigInt> {
    let lcm = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    c.iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Synthetic division by `(x - r)`: quotient and remainder.
fn deflate(c: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut acc = Rational::zero();
    for k in (0..=n).rev() {
        acc = acc * r + &c[k];
        if k > 0 {
            q[k - 1] = acc.clone();
        }
    }
    (q, acc)
}

/// All complex roots (with repetition) of the polynomial with the given
/// ascending coefficients, after dropping leading entries that are zero
/// relative to the largest coefficient.
pub fn complex_roots(coeffs: &[C64]) -> Vec<C64> {
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<C64> = coeffs.iter().map(|z| z / scale).collect();
    while c.len() > 1 && c.last().is_some_and(|z| z.norm() <= 1e-14) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<C64> = c.iter().map(|z| z / lead).collect();
    let mut roots = aberth(&monic);
    for z in &mut roots {
        *z = newton_polish(&monic, *z);
    }
    roots
}

fn horner(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial.
fn aberth(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        C64::new(0.0, 0.0)
                    } else {
                        C64::new(1.0, 0.0) / d
                    }
                })
                .sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn newton_polish(c: &[C64], mut z: C64) -> C64 {
    for _ in 0..5 {
        let (p, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.norm() <= 1e-17 * (1.0 + z.norm()) {
            break;
        }
        let next = z - step;
        if horner(c, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn up(s: &str) -> UniPoly<Rational> {
        UniPoly::parse(s, None).unwrap()
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let r = rational_roots(&up("(2*x - 1)^2*(x + 3)*x")).unwrap();
        assert_eq!(r, vec![(q(-3), 1), (q(0), 1), (qf(1, 2), 2)]);
        assert!(rational_roots(&up("x^2 + 1")).unwrap().is_empty());
        assert!(rational_roots(&UniPoly::zero(3)).unwrap().is_empty());
        let padded = UniPoly::parse("x - 1", Some(3)).unwrap();
        assert_eq!(rational_roots(&padded).unwrap(), vec![(q(1), 1)]);
    }

    #[test]
    fn complex_roots_of_quadratic_and_cubic() {
        let r = complex_roots(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        assert_eq!(r.len(), 2);
        for z in &r {
            assert!((z * z + 1.0).norm() < 1e-12);
        }
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let c = [6.0, -7.0, 0.0, 1.0].map(|v| C64::new(v, 0.0));
        let mut r: Vec<f64> = complex_roots(&c).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
