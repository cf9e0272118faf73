//! Modified Lommel functions of the first kind, integrals of them against
//! `e^{−βu} u^α`, and numerical verification of simple bounds on those
//! integrals.
//!
//! The layers build on each other:
//!
//! - [`special`]: Γ, signed ln Γ and the lower incomplete gamma function.
//! - [`hypergeometric`]: ₁F₂ and ₂F₃ by compensated direct summation.
//! - [`lommel`]: t̃_{μ,ν}, t_{μ,ν}, L_ν, recurrences and asymptotics.
//! - [`integral`]: closed form, incomplete-gamma series and quadrature.
//! - [`bounds`]: the inequality registry, bound evaluation and table grids.

pub mod bounds;
pub mod error;
pub mod hypergeometric;
pub mod integral;
pub mod lommel;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod sum;

pub use error::{Error, Result};
pub use lommel::LommelParams;
pub use series::{SeriesEval, DEFAULT_TOL};
