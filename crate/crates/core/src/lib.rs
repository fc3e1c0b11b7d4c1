//! Exact symbolic engine for the two-dimensional quantum Galilei groups and
//! their dual quantum Lie algebras.
//!
//! Everything is exact: coefficients are Gaussian rationals times monomials
//! in inverse deformation parameters, and formal series are truncated by a
//! per-generator grade.

#![no_std]

extern crate alloc;

pub mod duality;
pub mod error;
pub mod expr;
pub mod freealg;
pub mod hopf;
pub mod linalg;
pub mod lm;
pub mod normalize;
pub mod presets;
pub mod scalar;
pub mod series;

pub use error::Error;
pub use expr::{Expr, TensorExpr};
pub use freealg::{Alphabet, GeneratorId, NCPoly, TensorPoly, Word};
pub use normalize::{Normalizer, Presentation};
pub use scalar::{GaussRational, ParamMonomial, ParamSymbol, Rational, Scalar};
