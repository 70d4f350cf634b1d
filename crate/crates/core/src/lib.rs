//! Veronese-sequence solutions of the Euclidean CP^N sigma model (N = 2s).
//!
//! Solutions, projectors and their derivatives are evaluated through Krawtchouk polynomials,
//! and every closed form is paired with an independent numerical check: brute-force sums,
//! matrix products, finite differences or sphere quadrature.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod kraw;
pub mod lsp;
pub mod model;
pub mod quad;
pub mod sigma;
pub mod spin;
pub mod summation;
pub mod tolerance;

pub use error::{Error, Result};
pub use model::{AlgElement, CMatrix, CVector, HermProjector, ModelSpec, SpherePoint};
