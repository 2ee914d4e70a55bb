//! The pairing `[e, h]_{x,y}` between kernel vectors at two curve points.
//!
//! With `e` a left kernel vector at `x` and `h` a kernel vector at `y`, the
//! vector `a_i = e^T D_i h` is orthogonal to both `x` and `y`, hence a
//! multiple of the cross product `x * y`. The multiple is the pairing.

use crate::detrep::{normalize_first, DetRep, PointWithKernel};
use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::scalar::Field;

use super::scalars_agree;

/// Which denominators go with `e^T D0 h, e^T D1 h, e^T D2 h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingConvention {
    /// `x1 y2 - x2 y1`, `x2 y0 - x0 y2`, `x0 y1 - x1 y0`: the components of
    /// `x * y`. This is the convention under which the pairing is well
    /// defined.
    CrossProduct,
    /// `x1 y2 - x2 y1`, `x1 y0 - x0 y1`, `x2 y0 - x0 y2`. Kept so the
    /// alternative assignment can be tested; it does not give a common
    /// value in general.
    Permuted,
}

/// One quotient `numerator / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTerm<T> {
    pub numerator: T,
    pub denominator: T,
}

/// The three quotients for the given convention.
pub fn pairing_expressions<T: Field>(
    rep: &DetRep<T>,
    pk1: &PointWithKernel<T>,
    pk2: &PointWithKernel<T>,
    convention: PairingConvention,
) -> Result<[PairingTerm<T>; 3]> {
    let (x, y) = (pk1.x(), pk2.x());
    let e = left_kernel_vector(rep, pk1)?;
    let h = &pk2.e;
    let num = |i: usize| dot(&e, &rep.d(i).mul_vec(h).expect("square pencil"));
    let k = |a: usize, b: usize| x[a].clone() * y[b].clone() - x[b].clone() * y[a].clone();
    let dens = match convention {
        PairingConvention::CrossProduct => [k(1, 2), k(2, 0), k(0, 1)],
        PairingConvention::Permuted => [k(1, 2), k(1, 0), k(2, 0)],
    };
    let [d0, d1, d2] = dens;
    Ok([
        PairingTerm {
            numerator: num(0),
            denominator: d0,
        },
        PairingTerm {
            numerator: num(1),
            denominator: d1,
        },
        PairingTerm {
            numerator: num(2),
            denominator: d2,
        },
    ])
}

/// Left kernel vector at the first point: `pk.e` itself when the pencil is
/// symmetric there, otherwise the kernel of the transposed pencil.
fn left_kernel_vector<T: Field>(rep: &DetRep<T>, pk: &PointWithKernel<T>) -> Result<Vec<T>> {
    let a = rep.pencil_at(pk.x());
    if a.is_symmetric() {
        return Ok(pk.e.clone());
    }
    let at = a.transpose();
    let k = if T::EXACT {
        at.kernel_basis()
    } else {
        at.kernel_basis_with_tol(Some(crate::detrep::FLOAT_KERNEL_TOL))
    };
    if k.dim() == 0 {
        return Err(Error::PointNotOnCurve);
    }
    Ok(normalize_first(&k.column(0)))
}

fn is_zero_denominator<T: Field>(d: &T, scale: f64) -> bool {
    if T::EXACT {
        d.is_zero()
    } else {
        d.modulus() <= 1e-10 * scale.max(1.0)
    }
}

/// The common value of all quotients with a nonzero denominator.
///
/// Numerators over vanishing denominators must vanish too; otherwise, or if
/// two quotients differ, the result is `DisagreementDetected`.
pub fn common_value<T: Field>(terms: &[PairingTerm<T>; 3]) -> Result<T> {
    let scale = terms.iter().map(|t| t.denominator.modulus()).fold(0.0, f64::max);
    let nscale = terms.iter().map(|t| t.numerator.modulus()).fold(0.0, f64::max);
    let live: Vec<&PairingTerm<T>> = terms
        .iter()
        .filter(|t| !is_zero_denominator(&t.denominator, scale))
        .collect();
    let Some(first) = live.first() else {
        return Err(Error::AllDenominatorsZero);
    };
    let value = first.numerator.clone() / first.denominator.clone();
    for (i, t) in terms.iter().enumerate() {
        let ok = if is_zero_denominator(&t.denominator, scale) {
            is_zero_denominator(&t.numerator, nscale)
        } else {
            scalars_agree(&(t.numerator.clone() / t.denominator.clone()), &value)
        };
        if !ok {
            return Err(Error::DisagreementDetected(format!(
                "quotient {i} is {} / {}, expected {}",
                t.numerator.to_text(),
                t.denominator.to_text(),
                value.to_text()
            )));
        }
    }
    Ok(value)
}
