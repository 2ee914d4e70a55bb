//! Polynomials in up to three variables with coefficients in a [`Field`].
//!
//! Homogeneous trivariate forms are stored densely in [`MonomialOrder`]:
//! `x0` exponent descending, ties broken by `x1` exponent descending.
//!
//! [`Field`]: crate::scalar::Field

mod affine;
mod hom;
mod parse;
mod uni;

pub use affine::AffinePoly2;
pub use hom::HomPoly3;
pub use parse::{parse_sparse, SparsePoly};
pub use uni::UniPoly;

use std::fmt;

/// Exponent triple `(i0, i1, i2)` of the monomial `x0^i0 x1^i1 x2^i2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex3 {
    pub i0: usize,
    pub i1: usize,
    pub i2: usize,
}

impl MultiIndex3 {
    pub const fn new(i0: usize, i1: usize, i2: usize) -> Self {
        Self { i0, i1, i2 }
    }

    /// Unit index `e_k`.
    pub fn unit(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::from_array(e)
    }

    pub fn from_array(a: [usize; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [usize; 3] {
        [self.i0, self.i1, self.i2]
    }

    pub fn degree(self) -> usize {
        self.i0 + self.i1 + self.i2
    }

    pub fn get(self, k: usize) -> usize {
        self.to_array()[k]
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Self) -> Self {
        Self::new(self.i0 + o.i0, self.i1 + o.i1, self.i2 + o.i2)
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(Self::new(
            self.i0.checked_sub(o.i0)?,
            self.i1.checked_sub(o.i1)?,
            self.i2.checked_sub(o.i2)?,
        ))
    }

    /// Componentwise minimum.
    pub fn min(self, o: Self) -> Self {
        Self::new(self.i0.min(o.i0), self.i1.min(o.i1), self.i2.min(o.i2))
    }

    /// Inverse of [`position`](Self::position) within degree `d`.
    pub fn from_position(d: usize, k: usize) -> Self {
        let mut a = 0;
        while (a + 1) * (a + 2) / 2 <= k {
            a += 1;
        }
        let i2 = k - a * (a + 1) / 2;
        Self::new(d - a, a - i2, i2)
    }

    /// Position of this index in the [`MonomialOrder`] of its degree.
    pub fn position(self) -> usize {
        let a = self.i1 + self.i2;
        a * (a + 1) / 2 + self.i2
    }
}

impl fmt::Display for MultiIndex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i0, self.i1, self.i2)
    }
}

/// Number of monomials of degree `d` in three variables.
pub const fn num_monomials(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// All exponent triples of one degree, in the canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    degree: usize,
    indices: Vec<MultiIndex3>,
}

impl MonomialOrder {
    pub fn new(degree: usize) -> Self {
        let mut indices = Vec::with_capacity(num_monomials(degree));
        for a in 0..=degree {
            for i1 in (0..=a).rev() {
                indices.push(MultiIndex3::new(degree - a, i1, a - i1));
            }
        }
        Self { degree, indices }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex3] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = MultiIndex3> + '_ {
        self.indices.iter().copied()
    }

    /// Position of `i`, or `None` when its degree differs.
    pub fn position(&self, i: MultiIndex3) -> Option<usize> {
        (i.degree() == self.degree).then(|| i.position())
    }
}
