use crate::error::{Error, Result};
use crate::kraw::{binomial, eval, krawtchouk_dxi, krawtchouk_dxibar, p_of, KrawParams};
use crate::model::{c, commutator, CMatrix, CVector, HermProjector, ModelSpec, SpherePoint};
use crate::quad::Stencil;
use crate::tolerance::ANNIHILATION_RELATIVE;

use super::{falling_factorial, projector_closed, projector_dxi, projector_from_vector, veronese_fk, Frame};

/// df_k/dxi_+ by the product rule on the closed solution formula.
pub fn vector_dxi(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    point.require_nonzero("df_k")?;
    let n = spec.n();
    let (x, xbar) = (point.xi_plus(), point.xi_minus());
    let a = -xbar / (1.0 + point.rho());
    let ak = a.powu(k as u32);
    let scale = falling_factorial(n, k);
    let p = p_of(point);
    let mut out = CVector::zeros(n + 1);
    for j in 0..=n {
        let kj = eval(j, k, n, p);
        let dk = krawtchouk_dxi(&KrawParams::at_point(j, k, n, point)?, point)?;
        let xj = x.powu(j as u32);
        // d(a^k) = k a^(k+1), since da/dxi_+ = a^2
        let d_prefactor = ak * a * k as f64 * xj * kj;
        let d_power = if j == 0 {
            c(0.0)
        } else {
            ak * (j as f64) * x.powu(j as u32 - 1) * kj
        };
        let d_poly = ak * xj * dk;
        out[j] = (d_prefactor + d_power + d_poly) * (scale * binomial(n, j).sqrt());
    }
    Ok(out)
}

/// df_k/dxi_-.
pub fn vector_dxibar(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    point.require_nonzero("dbar f_k")?;
    let n = spec.n();
    let x = point.xi_plus();
    let one_plus_rho = 1.0 + point.rho();
    let a = -point.xi_minus() / one_plus_rho;
    let scale = falling_factorial(n, k);
    let p = p_of(point);
    let mut out = CVector::zeros(n + 1);
    for j in 0..=n {
        let kj = eval(j, k, n, p);
        let dk = krawtchouk_dxibar(&KrawParams::at_point(j, k, n, point)?, point)?;
        let xj = x.powu(j as u32);
        // da/dxi_- = -1/(1+rho)^2
        let d_prefactor = if k == 0 {
            c(0.0)
        } else {
            a.powu(k as u32 - 1) * (k as f64) * (-1.0 / (one_plus_rho * one_plus_rho)) * xj * kj
        };
        let d_poly = a.powu(k as u32) * xj * dk;
        out[j] = (d_prefactor + d_poly) * (scale * binomial(n, j).sqrt());
    }
    Ok(out)
}

/// The constant c with f = c f_k, assuming f is collinear with f_k.
fn gauge(spec: ModelSpec, k: usize, f: &CVector, point: SpherePoint) -> Result<num_complex::Complex64> {
    let fk = veronese_fk(spec, k, point)?;
    if f.len() != fk.len() {
        return Err(Error::DimensionMismatch {
            left: f.len(),
            right: fk.len(),
        });
    }
    Ok(fk.dotc(f) / fk.norm_squared())
}

fn project_out(f: &CVector, v: CVector) -> CVector {
    let overlap = f.dotc(&v) / f.norm_squared();
    v - f * overlap
}

/// (1 - f f^dagger / f^dagger f) df for f = c f_k. Returns the zero vector at k = N.
pub fn raise_vector(spec: ModelSpec, k: usize, f: &CVector, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    if k == spec.n() {
        return Ok(CVector::zeros(spec.dim()));
    }
    let factor = gauge(spec, k, f, point)?;
    Ok(project_out(f, vector_dxi(spec, k, point)? * factor))
}

/// (1 - f f^dagger / f^dagger f) dbar f for f = c f_k. Returns the zero vector at k = 0.
pub fn lower_vector(spec: ModelSpec, k: usize, f: &CVector, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    if k == 0 {
        return Ok(CVector::zeros(spec.dim()));
    }
    let factor = gauge(spec, k, f, point)?;
    Ok(project_out(f, vector_dxibar(spec, k, point)? * factor))
}

/// A projector together with its holomorphic derivative at the same point.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorJet {
    pub p: CMatrix,
    pub dp: CMatrix,
}

impl ProjectorJet {
    /// Closed P_k and dP_k; requires xi_+ != 0.
    pub fn veronese(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<Self> {
        Ok(Self {
            p: projector_closed(spec, k, point)?.into_matrix(),
            dp: projector_dxi(spec, k, point)?,
        })
    }

    /// Pole-free P_k and dP_k, valid at every point.
    pub fn regular(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<Self> {
        spec.check_index(k)?;
        let frame = Frame::new(spec, point);
        Ok(Self {
            p: frame.projector(k as isize),
            dp: frame.dp_regular(k as isize),
        })
    }
}

fn ladder_step(a: &CMatrix, p: &CMatrix, b: &CMatrix, scale: f64) -> Result<HermProjector> {
    let product = a * p * b;
    let trace = product.trace().re;
    let threshold = ANNIHILATION_RELATIVE * scale;
    if !(trace.abs() > threshold) {
        return Err(Error::Annihilated { trace, threshold });
    }
    Ok(HermProjector::from_matrix_unchecked(product / c(trace)))
}

/// dP P dbarP / tr(dP P dbarP); annihilated at the top of the chain.
pub fn raise_projector(jet: &ProjectorJet) -> Result<HermProjector> {
    let dbar = jet.dp.adjoint();
    ladder_step(&jet.dp, &jet.p, &dbar, jet.dp.norm_squared())
}

/// dbarP P dP / tr(dbarP P dP); annihilated at the bottom of the chain.
pub fn lower_projector(jet: &ProjectorJet) -> Result<HermProjector> {
    let dbar = jet.dp.adjoint();
    ladder_step(&dbar, &jet.p, &jet.dp, jet.dp.norm_squared())
}

/// ||[d dbar P, P]||_F for any projector field, with finite differences of base step h.
pub fn el_residual_field<F>(field: F, point: SpherePoint, h: f64) -> Result<f64>
where
    F: Fn(SpherePoint) -> Result<CMatrix>,
{
    let p = field(point)?;
    let laplacian = Stencil::new(h)?.mixed(&field, point)?;
    Ok(commutator(&laplacian, &p).norm())
}

/// ||[d dbar P_k, P_k]||_F for the Veronese projector, evaluated through the pole-free frame.
pub fn el_residual(spec: ModelSpec, k: usize, point: SpherePoint, h: f64) -> Result<f64> {
    spec.check_index(k)?;
    point.require_nonzero("EL residual")?;
    el_residual_field(|pt| Ok(Frame::new(spec, pt).projector(k as isize)), point, h)
}

/// Projector onto e_k + eps e_{k'}, with k' the next index up (down at the top). Not a solution
/// for eps != 0; used as a negative control.
pub fn perturbed_projector(spec: ModelSpec, k: usize, point: SpherePoint, eps: f64) -> Result<HermProjector> {
    spec.check_index(k)?;
    let frame = Frame::new(spec, point);
    let neighbour = if k < spec.n() { k + 1 } else { k - 1 };
    let (Some(a), Some(b)) = (frame.column(k as isize), frame.column(neighbour as isize)) else {
        unreachable!("indices checked above");
    };
    projector_from_vector(&(a + b * c(eps)))
}

/// ||d[dbar P_k, P_k] + dbar[dP_k, P_k]||_F by finite differences of the closed derivatives.
pub fn conservation_residual(spec: ModelSpec, k: usize, point: SpherePoint, h: f64) -> Result<f64> {
    spec.check_index(k)?;
    point.require_nonzero("conservation residual")?;
    let stencil = Stencil::new(h)?;
    let bracket = |pt: SpherePoint, conj: bool| -> Result<CMatrix> {
        let frame = Frame::new(spec, pt);
        pt.require_nonzero("dP_k")?;
        let dp = frame.dp_closed(k);
        let p = frame.projector(k as isize);
        Ok(if conj { commutator(&dp.adjoint(), &p) } else { commutator(&dp, &p) })
    };
    let a = stencil.first(|pt| bracket(pt, true), point, false)?;
    let b = stencil.first(|pt| bracket(pt, false), point, true)?;
    Ok((a + b).norm())
}
