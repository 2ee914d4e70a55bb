use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::parse::{monomial_text, parse_sparse, write_terms};
use crate::poly::{HomPoly3, MultiIndex3};
use crate::scalar::{Field, Rational};

/// Polynomial in the affine coordinates `x1, x2` with a total degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoly2<T> {
    bound: usize,
    coeffs: BTreeMap<(usize, usize), T>,
}

impl<T: Field> AffinePoly2<T> {
    /// Sums terms `c * x1^a * x2^b`; every term must respect the bound.
    pub fn from_terms(bound: usize, terms: impl IntoIterator<Item = ((usize, usize), T)>) -> Result<Self> {
        let mut coeffs: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for ((a, b), c) in terms {
            if a + b > bound {
                return Err(Error::DegreeMismatch {
                    expected: bound,
                    found: a + b,
                });
            }
            let e = coeffs.entry((a, b)).or_insert_with(T::zero);
            *e = e.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Self { bound, coeffs })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Largest total degree of a nonzero term (0 for the zero polynomial).
    pub fn total_degree(&self) -> usize {
        self.coeffs.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn coeff(&self, a: usize, b: usize) -> T {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(T::zero)
    }

    pub fn evaluate(&self, x1: &T, x2: &T) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, ((a, b), c)| {
            acc + c.clone() * x1.pow(*a as u32) * x2.pow(*b as u32)
        })
    }

    /// `x0^n p(x1/x0, x2/x0)`.
    pub fn homogenize(&self, n: usize) -> Result<HomPoly3<T>> {
        let d = self.total_degree();
        if n < d {
            return Err(Error::DegreeMismatch { expected: n, found: d });
        }
        HomPoly3::from_terms(
            n,
            self.coeffs
                .iter()
                .map(|((a, b), c)| (MultiIndex3::new(n - a - b, *a, *b), c.clone())),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let terms = self.coeffs.iter().flat_map(|((a, b), c)| {
            o.coeffs
                .iter()
                .map(move |((a2, b2), c2)| ((a + a2, b + b2), c.clone() * c2.clone()))
        });
        Self::from_terms(self.bound + o.bound, terms).expect("bounds add")
    }

    pub fn add(&self, o: &Self) -> Self {
        let terms = self.coeffs.iter().chain(&o.coeffs).map(|(k, c)| (*k, c.clone()));
        Self::from_terms(self.bound.max(o.bound), terms).expect("bound is the maximum")
    }
}

impl AffinePoly2<Rational> {
    /// Parses a polynomial in `x1, x2`; the bound is its total degree.
    pub fn parse(text: &str) -> Result<Self> {
        let sp = parse_sparse(text, &["x1", "x2"])?;
        let bound = sp.keys().map(|e| e[0] + e[1]).max().unwrap_or(0);
        Self::from_terms(bound, sp.into_iter().map(|(e, c)| ((e[0], e[1]), c)))
    }
}

impl<T: Field> fmt::Display for AffinePoly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // same order as the homogenized form: total degree ascending, then x1 descending
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (a + b, std::cmp::Reverse(a)));
        write_terms(
            f,
            keys.into_iter()
                .map(|(a, b)| (self.coeffs[&(a, b)].clone(), monomial_text(&[a, b], &["x1", "x2"]))),
        )
    }
}
