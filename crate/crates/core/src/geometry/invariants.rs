use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::model::{c, commutator, CVector, ModelSpec, SpherePoint};
use crate::quad::{sphere_integral_multi, QuadratureResult, QuadratureSpec, Stencil};
use crate::sigma::{lagrangian_density, Frame};
use crate::tolerance::QUADRATURE_FD_STEP;

use super::{metric, trace_dp_dbarp};

/// Closed values of the four global invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedInvariants {
    pub action: f64,
    pub willmore: f64,
    pub top_charge: f64,
    pub euler_char: f64,
}

impl ClosedInvariants {
    pub fn new(spec: ModelSpec, k: usize) -> Result<Self> {
        spec.check_index(k)?;
        let (n, s, kf) = (spec.n() as f64, spec.s(), k as f64);
        let (a, b) = ((kf + 1.0) * (n - kf), kf * (n - kf + 1.0));
        Ok(Self {
            action: 2.0 * PI * (s + 2.0 * s * kf - kf * kf),
            willmore: 2.0 * PI / 3.0 * (a * a - a * b + b * b),
            top_charge: n - 2.0 * kf,
            euler_char: 2.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlobalInvariants {
    pub action: f64,
    pub willmore: f64,
    pub top_charge: f64,
    pub euler_char: f64,
}

/// Raw quadrature results, with the area of the surface alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantQuadrature {
    pub action: QuadratureResult,
    pub willmore: QuadratureResult,
    pub top_charge: QuadratureResult,
    pub euler_char: QuadratureResult,
    pub area: QuadratureResult,
}

impl InvariantQuadrature {
    pub fn values(&self) -> GlobalInvariants {
        GlobalInvariants {
            action: self.action.value,
            willmore: self.willmore.value,
            top_charge: self.top_charge.value,
            euler_char: self.euler_char.value,
        }
    }

    pub fn check(&self) -> Result<GlobalInvariants> {
        for r in [self.action, self.willmore, self.top_charge, self.euler_char, self.area] {
            r.check()?;
        }
        Ok(self.values())
    }
}

/// ln |f_k|^2 and ln tr(dP dbarP) at one point.
///
/// |f_k| grows like (1+rho)^(N/2-k), so the logarithm is split into the scale of f_k and the
/// norm of the unit frame column rather than formed from the vector itself.
fn log_fields(spec: ModelSpec, k: usize, point: SpherePoint) -> CVector {
    let frame = Frame::new(spec, point);
    let column = frame.column(k as isize).expect("index checked");
    let ln_f = 2.0 * frame.fk_scale(k).norm().ln() + column.norm_squared().ln();
    CVector::from_vec(vec![c(ln_f), c(trace_dp_dbarp(&frame, k).ln())])
}

/// All invariants on one quadrature, without failing on poor convergence.
pub fn global_invariants_detailed(spec: ModelSpec, k: usize, q: &QuadratureSpec) -> Result<InvariantQuadrature> {
    spec.check_index(k)?;
    q.validate()?;
    let stencil = Stencil::new(QUADRATURE_FD_STEP)?.unrestricted();
    let integrand = |point: SpherePoint| {
        let frame = Frame::new(spec, point);
        let dp = frame.dp_regular(k as isize);
        let dbarp = dp.adjoint();
        let bracket = commutator(&dp, &dbarp);
        let willmore = (&bracket * &bracket).trace().re;
        let lap = stencil
            .mixed(|pt| Ok(log_fields(spec, k, pt)), point)
            .expect("unrestricted stencil");
        let action = lagrangian_density(spec, k, point).expect("index checked");
        let area = 2.0 * metric(spec, k, point).expect("index checked").g12;
        [action, willmore, lap[0].re / PI, -lap[1].re / PI, area]
    };
    let [action, willmore, top_charge, euler_char, area] = sphere_integral_multi(integrand, q)?;
    Ok(InvariantQuadrature {
        action,
        willmore,
        top_charge,
        euler_char,
        area,
    })
}

/// The invariants by quadrature; fails if the two finest refinements disagree.
pub fn global_invariants(spec: ModelSpec, k: usize, q: &QuadratureSpec) -> Result<GlobalInvariants> {
    global_invariants_detailed(spec, k, q)?.check()
}
