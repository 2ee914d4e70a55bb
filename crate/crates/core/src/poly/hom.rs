use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::parse::{monomial_text, parse_sparse, write_terms};
use crate::poly::{num_monomials, AffinePoly2, MonomialOrder, MultiIndex3};
use crate::scalar::{Field, Rational};

const VARS: [&str; 3] = ["x0", "x1", "x2"];

/// Homogeneous form of a declared degree in `x0, x1, x2`.
///
/// Coefficients are stored densely in [`MonomialOrder`]; the zero form keeps
/// its declared degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly3<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Field> HomPoly3<T> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![T::zero(); num_monomials(degree)],
        }
    }

    pub fn constant(c: T) -> Self {
        Self {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// Coefficients listed in [`MonomialOrder`].
    pub fn from_coeffs(degree: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != num_monomials(degree) {
            return Err(Error::Shape(format!(
                "{} coefficients for a form of degree {degree}",
                coeffs.len()
            )));
        }
        Ok(Self { degree, coeffs })
    }

    /// Sums the given terms; every index must have the declared degree.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (MultiIndex3, T)>) -> Result<Self> {
        let mut p = Self::zero(degree);
        let mut bad = Vec::new();
        for (i, c) in terms {
            if i.degree() != degree {
                bad.push(i.degree());
                continue;
            }
            let k = i.position();
            p.coeffs[k] = p.coeffs[k].clone() + c;
        }
        if !bad.is_empty() {
            bad.push(degree);
            bad.sort_unstable();
            bad.dedup();
            return Err(Error::NotHomogeneous { found: bad });
        }
        Ok(p)
    }

    pub fn monomial(i: MultiIndex3, c: T) -> Self {
        let mut p = Self::zero(i.degree());
        p.coeffs[i.position()] = c;
        p
    }

    /// The coordinate form `x_k`.
    pub fn variable(k: usize) -> Self {
        Self::monomial(MultiIndex3::unit(k), T::one())
    }

    /// The linear form `a0 x0 + a1 x1 + a2 x2`.
    pub fn linear(a: [T; 3]) -> Self {
        let [a0, a1, a2] = a;
        Self {
            degree: 1,
            coeffs: vec![a0, a1, a2],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: MultiIndex3) -> T {
        if i.degree() != self.degree {
            return T::zero();
        }
        self.coeffs[i.position()].clone()
    }

    /// Nonzero terms in [`MonomialOrder`].
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex3, &T)> + '_ {
        let d = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (MultiIndex3::from_position(d, k), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    /// Coefficient vector with respect to `order`, which must match the degree.
    pub fn coefficient_vector(&self, order: &MonomialOrder) -> Result<Vec<T>> {
        if order.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: order.degree(),
            });
        }
        Ok(self.coeffs.clone())
    }

    pub fn evaluate(&self, x: &[T; 3]) -> T {
        let pw: Vec<Vec<T>> = x
            .iter()
            .map(|v| {
                let mut row = vec![T::one()];
                for k in 0..self.degree {
                    row.push(row[k].clone() * v.clone());
                }
                row
            })
            .collect();
        let mut acc = T::zero();
        for (i, c) in self.terms() {
            acc = acc + c.clone() * pw[0][i.i0].clone() * pw[1][i.i1].clone() * pw[2][i.i2].clone();
        }
        acc
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> HomPoly3<U> {
        HomPoly3 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    fn zip_with(&self, o: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: o.degree,
            });
        }
        Ok(Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    /// Sum of two forms of the same degree.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.degree + o.degree);
        for (i, a) in self.terms() {
            for (j, b) in o.terms() {
                let k = i.add(j).position();
                out.coeffs[k] = out.coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x_k <- subs[k]`. All substituted forms share one degree
    /// `n`, so the result has degree `n * self.degree()`.
    pub fn compose(&self, subs: &[HomPoly3<T>; 3]) -> Result<Self> {
        let n = subs[0].degree;
        if let Some(bad) = subs.iter().find(|s| s.degree != n) {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: bad.degree,
            });
        }
        let pows: Vec<Vec<HomPoly3<T>>> = subs
            .iter()
            .map(|s| {
                let mut row = vec![Self::constant(T::one())];
                for k in 0..self.degree {
                    let next = row[k].mul(s);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = Self::zero(n * self.degree);
        for (i, c) in self.terms() {
            let t = pows[0][i.i0].mul(&pows[1][i.i1]).mul(&pows[2][i.i2]).scale(c);
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// `p(A x)`: each `x_k` is replaced by `sum_j A[k][j] x_j`.
    pub fn linear_change(&self, a: &Matrix<T>) -> Result<Self> {
        if a.shape() != (3, 3) {
            return Err(Error::Shape(format!("{:?} change of variables", a.shape())));
        }
        let det = a.det()?;
        let singular = if T::EXACT {
            det.is_zero()
        } else {
            det.modulus() <= 1e-14 * a.max_modulus().powi(3)
        };
        if singular {
            return Err(Error::Singular);
        }
        let row = |k: usize| HomPoly3::linear([a[(k, 0)].clone(), a[(k, 1)].clone(), a[(k, 2)].clone()]);
        self.compose(&[row(0), row(1), row(2)])
    }

    /// Partial derivative in `x_k`; the zero form of degree `d - 1` for
    /// constants is replaced by the zero constant.
    pub fn partial(&self, k: usize) -> Self {
        if self.degree == 0 {
            return Self::constant(T::zero());
        }
        let mut out = Self::zero(self.degree - 1);
        for (i, c) in self.terms() {
            if let Some(lower) = i.checked_sub(MultiIndex3::unit(k)) {
                out.coeffs[lower.position()] = c.clone() * T::from_i64(i.get(k) as i64);
            }
        }
        out
    }

    /// Sets `x0 = 1`; the result keeps the degree as its bound.
    pub fn dehomogenize(&self) -> AffinePoly2<T> {
        let terms = self.terms().map(|(i, c)| ((i.i1, i.i2), c.clone()));
        AffinePoly2::from_terms(self.degree, terms).expect("bounded by construction")
    }

    /// Coefficients of `self(s*u + t*v)` as a binary form of degree `d`,
    /// listed by ascending power of `t`.
    pub fn restrict_to_line(&self, u: &[T; 3], v: &[T; 3]) -> Vec<T> {
        let lin = |k: usize| HomPoly3::linear([u[k].clone(), v[k].clone(), T::zero()]);
        let r = self
            .compose(&[lin(0), lin(1), lin(2)])
            .expect("linear substitutions share degree 1");
        (0..=self.degree)
            .map(|j| r.coeff(MultiIndex3::new(self.degree - j, j, 0)))
            .collect()
    }
}

impl HomPoly3<Rational> {
    /// Parses a form in `x0, x1, x2`; the degree is read off the terms.
    pub fn parse(text: &str) -> Result<Self> {
        let sp = parse_sparse(text, &VARS)?;
        let degree = sp.keys().map(|e| e.iter().sum()).max().unwrap_or(0);
        Self::from_sparse(degree, sp)
    }

    /// Parses a form of the declared degree (needed for `"0"`).
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Self> {
        Self::from_sparse(degree, parse_sparse(text, &VARS)?)
    }

    fn from_sparse(degree: usize, sp: super::SparsePoly) -> Result<Self> {
        Self::from_terms(degree, sp.into_iter().map(|(e, c)| (MultiIndex3::from_array(e), c)))
    }
}

impl<T: Field> fmt::Display for HomPoly3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms()
                .map(|(i, c)| (c.clone(), monomial_text(&i.to_array(), &VARS))),
        )
    }
}
