use crate::error::Result;
use crate::model::{c, CMatrix, ModelSpec, SpherePoint};

use super::Frame;

/// The four one-sided products of P_k with its derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetProducts {
    pub p_dp: CMatrix,
    pub dbarp_p: CMatrix,
    pub p_dbarp: CMatrix,
    pub dp_p: CMatrix,
}

/// Closed forms of P dP, dbarP P, P dbarP and dP P.
pub fn frenet_products(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<FrenetProducts> {
    spec.check_index(k)?;
    point.require_nonzero("Frenet products")?;
    let frame = Frame::new(spec, point);
    let ki = k as isize;
    let dp_p = frame.dp_p_closed(k);
    Ok(FrenetProducts {
        p_dp: frame.p_dp(ki),
        dbarp_p: frame.dbarp_p(ki),
        p_dbarp: dp_p.adjoint(),
        dp_p,
    })
}

/// a = (k+1)(N-k) and b = k(N-k+1): the weights of P_{k+1} and P_{k-1} in the second-order identities.
fn weights(spec: ModelSpec, k: usize) -> (f64, f64) {
    let (n, k) = (spec.n() as f64, k as f64);
    ((k + 1.0) * (n - k), k * (n - k + 1.0))
}

/// (alpha_hat, alpha_check) = (k(N+1-k), (k+1)(N-k)) / (1+rho)^2.
pub fn clebsch_coeffs(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<(f64, f64)> {
    spec.check_index(k)?;
    let (a, b) = weights(spec, k);
    let q = (1.0 + point.rho()).powi(2);
    Ok((b / q, a / q))
}

/// L = 2(s + 2sk - k^2) / (1+rho)^2.
pub fn lagrangian_density(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<f64> {
    spec.check_index(k)?;
    let (s, k) = (spec.s(), k as f64);
    Ok(2.0 * (s + 2.0 * s * k - k * k) / (1.0 + point.rho()).powi(2))
}

/// (dbarP dP, dP dbarP) = ((b P_{k-1} + a P_k), (a P_{k+1} + b P_k)) / (1+rho)^2.
pub fn derivative_products(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<(CMatrix, CMatrix)> {
    spec.check_index(k)?;
    let frame = Frame::new(spec, point);
    let ki = k as isize;
    let (a, b) = weights(spec, k);
    let q = (1.0 + point.rho()).powi(2);
    let dbar_d = (frame.projector(ki - 1) * c(b) + frame.projector(ki) * c(a)) / c(q);
    let d_dbar = (frame.projector(ki + 1) * c(a) + frame.projector(ki) * c(b)) / c(q);
    Ok((dbar_d, d_dbar))
}

/// d dbar P_k = alpha_hat P_{k-1} - (alpha_hat + alpha_check) P_k + alpha_check P_{k+1}.
pub fn mixed_second_derivative(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CMatrix> {
    let (hat, check) = clebsch_coeffs(spec, k, point)?;
    let frame = Frame::new(spec, point);
    let ki = k as isize;
    Ok(frame.projector(ki - 1) * c(hat) - frame.projector(ki) * c(hat + check) + frame.projector(ki + 1) * c(check))
}
