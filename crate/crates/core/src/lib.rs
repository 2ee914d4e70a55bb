//! Elimination theory along plane algebraic curves.
//!
//! ```
//! use curvelim::curve::CurveElim;
//! use curvelim::detrep::conic;
//! use curvelim::poly::HomPoly3;
//!
//! let ce = CurveElim::new(conic());
//! let p = HomPoly3::parse("x0 - x2").unwrap();
//! let q = HomPoly3::parse("x1").unwrap();
//! let count = ce.curve_count(&p, &q).unwrap();
//! assert_eq!((count.sylvester_count, count.bezout_count), (1, 1));
//! ```

pub mod classical;
pub mod cli;
pub mod curve;
pub mod detrep;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational_map;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::SubspaceBasis;
pub use matrix::Matrix;
pub use scalar::{Field, GaussRational, Rational, C64};
