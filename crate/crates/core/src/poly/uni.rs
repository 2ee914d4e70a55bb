use std::fmt;

use crate::error::{Error, Result};
use crate::poly::parse::{monomial_text, parse_sparse, write_terms};
use crate::scalar::{Field, Rational};

/// Univariate polynomial `c0 + c1 x + ... + cn x^n` of declared degree `n`.
///
/// The leading coefficient may vanish. The same type holds binary forms
/// in `s, t`, with `c_i` the coefficient of `s^(n-i) t^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> UniPoly<T> {
    /// Coefficients by ascending power; the declared degree is `len - 1`.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); degree + 1],
        }
    }

    /// `x^k` of declared degree `k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero(k);
        p.coeffs[k] = T::one();
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    /// Raises the declared degree by padding with zero coefficients.
    pub fn with_degree(&self, n: usize) -> Result<Self> {
        if let Some(k) = (n + 1..self.coeffs.len()).find(|&k| !self.coeffs[k].is_zero()) {
            return Err(Error::DegreeMismatch { expected: n, found: k });
        }
        Ok(Self {
            coeffs: (0..=n).map(|i| self.coeff(i)).collect(),
        })
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluates the binary form at `(s, t)`.
    pub fn evaluate_binary(&self, s: &T, t: &T) -> T {
        let n = self.degree();
        self.coeffs.iter().enumerate().fold(T::zero(), |acc, (i, c)| {
            acc + c.clone() * s.pow((n - i) as u32) * t.pow(i as u32)
        })
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Sum with declared degree `max` of the two.
    pub fn add(&self, o: &Self) -> Self {
        let n = self.degree().max(o.degree());
        Self {
            coeffs: (0..=n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    /// Product with declared degree the sum of the two.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.degree() + o.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// Derivative, declared degree one lower (degree 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (1..self.coeffs.len())
                .map(|i| self.coeffs[i].clone() * T::from_i64(i as i64))
                .collect(),
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, mono: impl Fn(usize) -> String) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (c.clone(), mono(i))))
    }

    /// Text in the variables `s, t` of the binary form.
    pub fn to_binary_string(&self) -> String {
        struct B<'a, T>(&'a UniPoly<T>);
        impl<T: Field> fmt::Display for B<'_, T> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let n = self.0.degree();
                // highest power of s first
                self.0.fmt_with(f, |i| monomial_text(&[n - i, i], &["s", "t"]))
            }
        }
        B(self).to_string()
    }
}

impl UniPoly<Rational> {
    /// Parses a polynomial in `x`. Without a declared degree the degree is
    /// that of the highest nonzero term.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let sp = parse_sparse(text, &["x"])?;
        let top = sp.keys().map(|e| e[0]).max().unwrap_or(0);
        let n = degree.unwrap_or(top);
        if top > n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: top,
            });
        }
        let mut p = Self::zero(n);
        for (e, c) in sp {
            p.coeffs[e[0]] = c;
        }
        Ok(p)
    }

    /// Parses a binary form in `s, t`; all terms must share one degree.
    pub fn parse_binary(text: &str, degree: Option<usize>) -> Result<Self> {
        let sp = parse_sparse(text, &["s", "t"])?;
        let mut degrees: Vec<usize> = sp.keys().map(|e| e[0] + e[1]).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let n = match (degree, degrees.as_slice()) {
            (Some(n), []) => n,
            (None, []) => 0,
            (Some(n), [d]) if *d == n => n,
            (None, [d]) => *d,
            (Some(n), _) => {
                degrees.push(n);
                degrees.sort_unstable();
                degrees.dedup();
                return Err(Error::NotHomogeneous { found: degrees });
            }
            (None, _) => return Err(Error::NotHomogeneous { found: degrees }),
        };
        let mut p = Self::zero(n);
        for (e, c) in sp {
            p.coeffs[e[1]] = c;
        }
        Ok(p)
    }
}

impl<T: Field> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, |i| monomial_text(&[i], &["x"]))
    }
}
