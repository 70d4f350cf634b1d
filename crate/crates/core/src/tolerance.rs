//! Shared numeric thresholds.

/// Algebraic identities that only see rounding error.
pub const TOL_EXACT: f64 = 1e-12;
/// Closed-form identities checked against an independent construction.
pub const TOL_CLOSED: f64 = 1e-10;
/// Identities checked through finite differences.
pub const TOL_FD: f64 = 1e-6;

/// Relative trace threshold, scaled by the squared Frobenius norm of the derivative, below which a
/// raising or lowering step counts as annihilation.
pub const ANNIHILATION_RELATIVE: f64 = 1e-14;

/// Squared norm below which a vector cannot define a projector.
pub const DEGENERATE_NORM_SQ: f64 = 1e-300;

/// Default finite-difference step before scaling by max(1, |xi|).
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Step used inside quadrature integrands that need a Laplacian.
pub const QUADRATURE_FD_STEP: f64 = 1e-3;

/// Radius of the disc around the origin that meshes and stencils must avoid.
pub const EXCLUDED_RADIUS: f64 = 1e-3;

/// Relative disagreement between two quadrature refinements that counts as non-convergence.
pub const QUADRATURE_CONVERGENCE: f64 = 1e-6;
