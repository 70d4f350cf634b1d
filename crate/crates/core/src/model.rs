//! Model size, points of the Riemann sphere and the matrix value types.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest supported N; binomials up to C(40, 20) stay exact in 128-bit integers.
pub const MAX_N: usize = 40;

/// The model CP^N with N = 2s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    n: usize,
}

impl ModelSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ModelTooSmall);
        }
        if n > MAX_N {
            return Err(Error::ModelTooLarge { n, max: MAX_N });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension N + 1.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Spin s = N/2.
    pub fn s(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k > self.n {
            Err(Error::IndexOutOfRange { index: k, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// A point xi_+ of the complex plane; xi_- is always its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    xi: Complex64,
}

impl SpherePoint {
    pub fn new(xi_plus: Complex64) -> Self {
        Self { xi: xi_plus }
    }

    /// From real coordinates xi_+ = xi1 + i xi2.
    pub fn from_real(xi1: f64, xi2: f64) -> Self {
        Self::new(Complex64::new(xi1, xi2))
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        Self::new(Complex64::from_polar(r, phi))
    }

    pub fn origin() -> Self {
        Self::new(Complex64::new(0.0, 0.0))
    }

    pub fn xi_plus(&self) -> Complex64 {
        self.xi
    }

    pub fn xi_minus(&self) -> Complex64 {
        self.xi.conj()
    }

    pub fn xi1(&self) -> f64 {
        self.xi.re
    }

    pub fn xi2(&self) -> f64 {
        self.xi.im
    }

    /// rho = xi_+ xi_- = |xi|^2.
    pub fn rho(&self) -> f64 {
        self.xi.norm_sqr()
    }

    pub fn radius(&self) -> f64 {
        self.xi.norm()
    }

    pub fn is_origin(&self) -> bool {
        self.xi.re == 0.0 && self.xi.im == 0.0
    }

    /// Shift in the real coordinates.
    pub fn offset(&self, d1: f64, d2: f64) -> Self {
        Self::from_real(self.xi.re + d1, self.xi.im + d2)
    }

    pub(crate) fn require_nonzero(&self, what: &'static str) -> Result<()> {
        if self.is_origin() {
            Err(Error::SingularPoint(what))
        } else {
            Ok(())
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(xi: Complex64) -> Self {
        Self::new(xi)
    }
}

/// Residuals of the rank-1 projector axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorDefects {
    /// ||P^2 - P||_F
    pub idempotency: f64,
    /// ||P - P^dagger||_F
    pub hermiticity: f64,
    /// |tr P - 1|
    pub trace: f64,
}

impl ProjectorDefects {
    pub fn max(&self) -> f64 {
        self.idempotency.max(self.hermiticity).max(self.trace)
    }
}

/// A rank-1 Hermitian projector.
#[derive(Debug, Clone, PartialEq)]
pub struct HermProjector(CMatrix);

impl HermProjector {
    /// Wraps a matrix that is a projector by construction.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(m)
    }

    /// Wraps a matrix after checking the axioms to `tol`.
    pub fn try_from_matrix(m: CMatrix, tol: f64) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let d = projector_defects(&m);
        (d.max() <= tol).then_some(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn defects(&self) -> ProjectorDefects {
        projector_defects(&self.0)
    }
}

pub fn projector_defects(m: &CMatrix) -> ProjectorDefects {
    ProjectorDefects {
        idempotency: (m * m - m).norm(),
        hermiticity: (m - m.adjoint()).norm(),
        trace: (m.trace() - Complex64::new(1.0, 0.0)).norm(),
    }
}

/// An element of su(N+1): anti-Hermitian and traceless.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElement(CMatrix);

impl AlgElement {
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self(m)
    }

    pub fn try_from_matrix(m: CMatrix, tol: f64) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let e = Self(m);
        (e.anti_hermiticity_defect() <= tol && e.trace_defect() <= tol).then_some(e)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// ||A + A^dagger||_F
    pub fn anti_hermiticity_defect(&self) -> f64 {
        (&self.0 + self.0.adjoint()).norm()
    }

    pub fn trace_defect(&self) -> f64 {
        self.0.trace().norm()
    }
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);
