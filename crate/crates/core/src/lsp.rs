//! The linear spectral problem dphi = U phi, dbar phi = V phi attached to each P_k.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{commutator, CMatrix, ModelSpec, SpherePoint, I};
use crate::quad::Stencil;
use crate::sigma::Frame;

/// A spectral parameter away from the poles at +1 and -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam(Complex64);

impl SpectralParam {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if (lambda - 1.0).norm() == 0.0 || (lambda + 1.0).norm() == 0.0 || !lambda.is_finite() {
            return Err(Error::SpectralPole(lambda));
        }
        Ok(Self(lambda))
    }

    /// lambda = i t, never a pole for real t.
    pub fn imaginary(t: f64) -> Self {
        Self(I * t)
    }

    pub fn lambda(&self) -> Complex64 {
        self.0
    }
}

/// [dP_k, P_k] and [dbarP_k, P_k] from the closed one-sided products.
fn commutators(frame: &Frame, k: usize) -> (CMatrix, CMatrix) {
    let dp_p = frame.dp_p_closed(k);
    let ki = k as isize;
    let d = &dp_p - frame.p_dp(ki);
    let dbar = frame.dbarp_p(ki) - dp_p.adjoint();
    (d, dbar)
}

/// U = 2/(1+lambda) [dP, P] and V = 2/(1-lambda) [dbarP, P].
pub fn connection_matrices(spec: ModelSpec, k: usize, point: SpherePoint, lam: &SpectralParam) -> Result<(CMatrix, CMatrix)> {
    spec.check_index(k)?;
    point.require_nonzero("connection matrices")?;
    let (d, dbar) = commutators(&Frame::new(spec, point), k);
    let l = lam.lambda();
    Ok((d * (2.0 / (1.0 + l)), dbar * (2.0 / (1.0 - l))))
}

/// Frobenius norm of dbar U - d V + [U, V], outer derivatives by finite differences.
pub fn zero_curvature_residual(spec: ModelSpec, k: usize, point: SpherePoint, lam: &SpectralParam, h: f64) -> Result<f64> {
    let (u, v) = connection_matrices(spec, k, point, lam)?;
    let stencil = Stencil::new(h)?;
    let dbar_u = stencil.first(|pt| connection_matrices(spec, k, pt, lam).map(|m| m.0), point, true)?;
    let d_v = stencil.first(|pt| connection_matrices(spec, k, pt, lam).map(|m| m.1), point, false)?;
    Ok((dbar_u - d_v + commutator(&u, &v)).norm())
}

/// phi_k and its inverse at lambda = i t:
/// phi = 1 + 4 lambda/(1-lambda)^2 sum_{j<k} P_j - 2/(1-lambda) P_k,
/// phi^-1 = 1 - 4 lambda/(1+lambda)^2 sum_{j<k} P_j - 2/(1+lambda) P_k.
pub fn wavefunction(spec: ModelSpec, k: usize, point: SpherePoint, t: f64) -> Result<(CMatrix, CMatrix)> {
    spec.check_index(k)?;
    let frame = Frame::new(spec, point);
    let dim = spec.dim();
    let lower = (0..k as isize).fold(CMatrix::zeros(dim, dim), |acc, j| acc + frame.projector(j));
    let pk = frame.projector(k as isize);
    let l = I * t;
    let id = CMatrix::identity(dim, dim);
    let phi = &id + &lower * (4.0 * l / (1.0 - l).powi(2)) - &pk * (2.0 / (1.0 - l));
    let inv = &id - &lower * (4.0 * l / (1.0 + l).powi(2)) - &pk * (2.0 / (1.0 + l));
    Ok((phi, inv))
}

/// (||dphi - U phi||, ||dbar phi - V phi||) with finite differences of step h.
pub fn lsp_residuals(spec: ModelSpec, k: usize, point: SpherePoint, t: f64, h: f64) -> Result<(f64, f64)> {
    let lam = SpectralParam::imaginary(t);
    let (u, v) = connection_matrices(spec, k, point, &lam)?;
    let (phi, _) = wavefunction(spec, k, point, t)?;
    let stencil = Stencil::new(h)?;
    let field = |pt| wavefunction(spec, k, pt, t).map(|w| w.0);
    let d = stencil.first(field, point, false)?;
    let dbar = stencil.first(field, point, true)?;
    Ok(((d - &u * &phi).norm(), (dbar - &v * &phi).norm()))
}

/// ||phi phi^-1 - 1|| and ||phi^-1 phi - 1||, the larger of the two.
pub fn wavefunction_inverse_defect(spec: ModelSpec, k: usize, point: SpherePoint, t: f64) -> Result<f64> {
    let (phi, inv) = wavefunction(spec, k, point, t)?;
    let id = CMatrix::identity(spec.dim(), spec.dim());
    Ok((&phi * &inv - &id).norm().max((&inv * &phi - &id).norm()))
}
