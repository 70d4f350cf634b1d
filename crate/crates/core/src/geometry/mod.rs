//! Surfaces X_k in su(N+1) built from the Veronese projectors, and their local geometry.

mod basis;
mod invariants;

pub use basis::{coordinates, mesh_sample, su_basis, MeshNode};
pub use invariants::{global_invariants, global_invariants_detailed, ClosedInvariants, GlobalInvariants, InvariantQuadrature};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{c, commutator, AlgElement, CMatrix, ModelSpec, SpherePoint, I};
use crate::quad::Stencil;
use crate::sigma::{derivative_products, Frame};

/// X_k = -i (P_k + 2 sum_{j<k} P_j) + i (1+2k)/(1+2s) 1.
pub fn immersion(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<AlgElement> {
    spec.check_index(k)?;
    Ok(immersion_in_frame(&Frame::new(spec, point), k))
}

pub(crate) fn immersion_in_frame(frame: &Frame, k: usize) -> AlgElement {
    let spec = frame.spec();
    let dim = spec.dim();
    let mut sum = frame.projector(k as isize);
    for j in 0..k {
        sum += frame.projector(j as isize) * c(2.0);
    }
    let shift = (1.0 + 2.0 * k as f64) / (1.0 + spec.n() as f64);
    AlgElement::from_matrix_unchecked(sum * (-I) + CMatrix::identity(dim, dim) * (I * shift))
}

/// lambda with (X_k - i lambda) P_j = 0.
pub fn immersion_eigenvalue(spec: ModelSpec, k: usize, j: usize) -> f64 {
    let (k, n) = (k as f64, spec.n() as f64);
    let shift = (1.0 + 2.0 * k) / (1.0 + n);
    match (j as f64).partial_cmp(&k) {
        Some(std::cmp::Ordering::Less) => shift - 2.0,
        Some(std::cmp::Ordering::Equal) => shift - 1.0,
        _ => shift,
    }
}

/// (X_k, X_k) from the eigenvalues: half the sum of their squares.
pub fn radius_sq_direct(spec: ModelSpec, k: usize) -> f64 {
    (0..=spec.n()).map(|j| immersion_eigenvalue(spec, k, j).powi(2)).sum::<f64>() / 2.0
}

/// The alternative closed expression ((1+2k)(2(2s-k)-1)/(1+2s) - 1)/2. It disagrees with
/// `radius_sq_direct` (for instance s/(2s+1) against (s-1)/(2s+1) at k = 0) and is kept only
/// so reports can show both.
pub fn radius_sq_alternative(spec: ModelSpec, k: usize) -> f64 {
    let (k, n) = (k as f64, spec.n() as f64);
    ((1.0 + 2.0 * k) * (2.0 * (n - k) - 1.0) / (1.0 + n) - 1.0) / 2.0
}

/// (A, B) = -tr(AB)/2, real part.
pub fn inner(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    inner_complex(a, b).map(|z| z.re)
}

/// -tr(AB)/2 for complexified elements such as the tangents dX.
pub fn inner_complex(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    Ok((a * b).trace() * -0.5)
}

fn dp_commutator(frame: &Frame, k: usize) -> CMatrix {
    // [dP, P] = dP P - P dP
    frame.dp_p_closed(k) - frame.p_dp(k as isize)
}

fn dbarp_commutator(frame: &Frame, k: usize) -> CMatrix {
    frame.dbarp_p(k as isize) - frame.dp_p_closed(k).adjoint()
}

/// (dX_k, dbar X_k) = (-i [dP, P], i [dbarP, P]) from the closed one-sided products.
///
/// These complexified tangents are not themselves anti-Hermitian; dX^dagger = -dbar X.
pub fn tangent_vectors(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<(CMatrix, CMatrix)> {
    spec.check_index(k)?;
    point.require_nonzero("tangent vectors")?;
    let frame = Frame::new(spec, point);
    Ok((dp_commutator(&frame, k) * (-I), dbarp_commutator(&frame, k) * I))
}

/// The only nonzero metric component and the two Christoffel symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricData {
    pub g12: f64,
    pub gamma_111: Complex64,
    pub gamma_222: Complex64,
}

/// g12 = (s(2k+1) - k^2)/(1+rho)^2, Gamma^1_11 = -2 xi_-/(1+rho), Gamma^2_22 = -2 xi_+/(1+rho).
pub fn metric(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<MetricData> {
    spec.check_index(k)?;
    let (s, kf) = (spec.s(), k as f64);
    let q = 1.0 + point.rho();
    Ok(MetricData {
        g12: (s * (2.0 * kf + 1.0) - kf * kf) / (q * q),
        gamma_111: point.xi_minus() * (-2.0 / q),
        gamma_222: point.xi_plus() * (-2.0 / q),
    })
}

/// |tr(dP dP)|, the would-be g11 = conj(g22); vanishes on the Veronese surfaces.
pub fn null_metric_defect(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<f64> {
    spec.check_index(k)?;
    let dp = Frame::new(spec, point).dp_regular(k as isize);
    Ok((&dp * &dp).trace().norm())
}

/// Coefficients of the second fundamental form in dxi_+^2, dxi_+ dxi_- and dxi_-^2.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondForm {
    pub dd: CMatrix,
    pub mixed: CMatrix,
    pub dbardbar: CMatrix,
}

/// The pure coefficients take finite differences of the closed tangents; the mixed one is
/// 2i [dbarP, dP] from the projector decomposition of the derivative products.
pub fn second_form(spec: ModelSpec, k: usize, point: SpherePoint, h: f64) -> Result<SecondForm> {
    spec.check_index(k)?;
    point.require_nonzero("second fundamental form")?;
    let stencil = Stencil::new(h)?;
    let m = metric(spec, k, point)?;
    let (dx, dbarx) = tangent_vectors(spec, k, point)?;
    let dd = stencil.first(|pt| tangent_vectors(spec, k, pt).map(|t| t.0), point, false)? - dx * m.gamma_111;
    let dbardbar = stencil.first(|pt| tangent_vectors(spec, k, pt).map(|t| t.1), point, true)? - dbarx * m.gamma_222;
    let (dbar_d, d_dbar) = derivative_products(spec, k, point)?;
    Ok(SecondForm {
        dd,
        mixed: (dbar_d - d_dbar) * (I * 2.0),
        dbardbar,
    })
}

/// K_k = 2/(2sk + s - k^2).
pub fn gaussian_curvature(spec: ModelSpec, k: usize) -> Result<f64> {
    spec.check_index(k)?;
    let (s, kf) = (spec.s(), k as f64);
    Ok(2.0 / (2.0 * s * kf + s - kf * kf))
}

/// tr(dP_k dbarP_k), computed from the regular derivative.
pub(crate) fn trace_dp_dbarp(frame: &Frame, k: usize) -> f64 {
    let dp = frame.dp_regular(k as isize);
    dp.norm_squared()
}

/// -2 d dbar ln tr(dP dbarP) / tr(dP dbarP) by finite differences with base step h.
pub fn gaussian_curvature_numeric(spec: ModelSpec, k: usize, point: SpherePoint, h: f64) -> Result<f64> {
    spec.check_index(k)?;
    let stencil = Stencil::new(h)?.unrestricted();
    let log_t = |pt: SpherePoint| Ok(trace_dp_dbarp(&Frame::new(spec, pt), k).ln());
    let lap = stencil.mixed(log_t, point)?;
    Ok(-2.0 * lap / trace_dp_dbarp(&Frame::new(spec, point), k))
}

/// H_k in closed form, entry by entry from the Krawtchouk-weighted frame.
pub fn mean_curvature(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<AlgElement> {
    spec.check_index(k)?;
    point.require_nonzero("mean curvature")?;
    let frame = Frame::new(spec, point);
    let (n, s, kf, rho) = (spec.n() as f64, spec.s(), k as f64, point.rho());
    let (x, xbar) = (point.xi_plus(), point.xi_minus());
    let ki = k as isize;
    let e = frame.column(ki).expect("index checked");
    let below = frame.column(ki - 1);
    let g = frame.coupling(ki);
    let one_sided = |i: usize| (i as f64 - n + kf) * rho + i as f64 - kf;
    let denom = s + 2.0 * s * kf - kf * kf;
    let dim = spec.dim();
    let h = CMatrix::from_fn(dim, dim, |j, l| {
        let (jf, lf) = (j as f64, l as f64);
        let a2 = (jf - n + kf) * (lf - n + kf);
        let a1 = 2.0 * ((jf - s) * (lf - s) - (kf - s) * (kf - s - 1.0));
        let a0 = (jf - kf) * (lf - kf);
        let mut v = e[j] * e[l].conj() * ((a2 * rho * rho + a1 * rho + a0) / rho);
        if let Some(b) = below {
            v += b[j] * e[l].conj() * g * one_sided(l) / x;
            v += e[j] * b[l].conj() * g * one_sided(j) / xbar;
        }
        v * (-2.0 * I / denom)
    });
    Ok(AlgElement::from_matrix_unchecked(h))
}

/// H_k = -4i [dP, dbarP] / tr(dP dbarP) from products of the regular derivative.
pub fn mean_curvature_from_products(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<AlgElement> {
    spec.check_index(k)?;
    let frame = Frame::new(spec, point);
    let dp = frame.dp_regular(k as isize);
    let dbarp = dp.adjoint();
    let t = dp.norm_squared();
    Ok(AlgElement::from_matrix_unchecked(commutator(&dp, &dbarp) * (-4.0 * I / t)))
}

/// H_k = -2i [(k+1)(N-k)(P_{k+1} - P_k) + k(N-k+1)(P_k - P_{k-1})] / (s + 2sk - k^2).
pub fn mean_curvature_decomposition(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<AlgElement> {
    spec.check_index(k)?;
    let frame = Frame::new(spec, point);
    let (n, s, kf) = (spec.n() as f64, spec.s(), k as f64);
    let (a, b) = ((kf + 1.0) * (n - kf), kf * (n - kf + 1.0));
    let ki = k as isize;
    let body = (frame.projector(ki + 1) - frame.projector(ki)) * c(a) + (frame.projector(ki) - frame.projector(ki - 1)) * c(b);
    Ok(AlgElement::from_matrix_unchecked(body * (-2.0 * I / (s + 2.0 * s * kf - kf * kf))))
}

/// Frobenius norms of the algebraic identities among the X_k at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    /// max over j < k of ||[X_j, X_k]||
    pub max_commutator: f64,
    /// ||sum_k (-1)^k X_k||
    pub alternating_sum: f64,
    /// Minimal-polynomial residual per k: quadratic at the ends, cubic inside.
    pub min_poly: Vec<f64>,
}

impl StructureReport {
    pub fn max(&self) -> f64 {
        self.min_poly
            .iter()
            .copied()
            .fold(self.max_commutator.max(self.alternating_sum), f64::max)
    }
}

pub fn structure_checks(spec: ModelSpec, point: SpherePoint) -> StructureReport {
    let frame = Frame::new(spec, point);
    let n = spec.n();
    let dim = spec.dim();
    let xs: Vec<CMatrix> = (0..=n).map(|k| immersion_in_frame(&frame, k).into_matrix()).collect();
    let mut max_commutator = 0.0f64;
    for j in 0..=n {
        for k in j + 1..=n {
            max_commutator = max_commutator.max(commutator(&xs[j], &xs[k]).norm());
        }
    }
    let alternating = xs
        .iter()
        .enumerate()
        .fold(CMatrix::zeros(dim, dim), |acc, (k, x)| if k % 2 == 0 { acc + x } else { acc - x });
    let min_poly = (0..=n)
        .map(|k| {
            let mut roots: Vec<f64> = (0..=n).map(|j| immersion_eigenvalue(spec, k, j)).collect();
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let id = CMatrix::identity(dim, dim);
            roots.iter().fold(id.clone(), |acc, lam| acc * (&xs[k] - &id * (I * *lam))).norm()
        })
        .collect();
    StructureReport {
        max_commutator,
        alternating_sum: alternating.norm(),
        min_poly,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CVector;
    use crate::sigma::{projector_closed, projector_dxi};
    use crate::tolerance::{TOL_CLOSED, TOL_EXACT, TOL_FD};
    use proptest::prelude::*;

    fn spec(n: usize) -> ModelSpec {
        ModelSpec::new(n).unwrap()
    }

    #[test]
    fn immersion_examples() {
        let x = immersion(spec(1), 0, SpherePoint::origin()).unwrap();
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![I * -0.5, I * 0.5]));
        assert!((x.matrix() - want).norm() < TOL_EXACT);
        let x = immersion(spec(4), 2, SpherePoint::new(Complex64::new(0.7, 0.1))).unwrap();
        assert!(x.trace_defect() < TOL_EXACT);
        assert!(x.anti_hermiticity_defect() < TOL_EXACT);
    }

    #[test]
    fn eigenvalue_table() {
        // (X_1 - i lambda) P_0 = 0 for N = 2 with lambda = (2(1-2) - 1)/3 = -1.
        assert!((immersion_eigenvalue(spec(2), 1, 0) + 1.0).abs() < 1e-15);
        let pt = SpherePoint::new(Complex64::new(-0.3, 0.6));
        for n in 1..=5 {
            for k in 0..=n {
                let x = immersion(spec(n), k, pt).unwrap();
                for j in 0..=n {
                    let p = projector_closed(spec(n), j, pt).unwrap();
                    let lam = immersion_eigenvalue(spec(n), k, j);
                    let id = CMatrix::identity(n + 1, n + 1);
                    assert!(((x.matrix() - id * (I * lam)) * p.matrix()).norm() < TOL_CLOSED);
                }
            }
        }
    }

    #[test]
    fn radius_values() {
        assert!((radius_sq_direct(spec(1), 0) - 0.25).abs() < 1e-15);
        for n in 1..=8 {
            let s = spec(n).s();
            assert!((radius_sq_direct(spec(n), 0) - s / (2.0 * s + 1.0)).abs() < 1e-14);
            assert!((radius_sq_alternative(spec(n), 0) - (s - 1.0) / (2.0 * s + 1.0)).abs() < 1e-14);
        }
        let x = immersion(spec(1), 0, SpherePoint::origin()).unwrap();
        assert!((inner(x.matrix(), x.matrix()).unwrap() - 0.25).abs() < TOL_EXACT);
    }

    #[test]
    fn inner_product() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![I * -0.5, I * 0.5]));
        assert!((inner(&a, &a).unwrap() - 0.25).abs() < 1e-16);
        let b = CMatrix::from_fn(2, 2, |i, j| if i != j { c(if i < j { 1.0 } else { -1.0 }) } else { c(0.0) });
        assert!((inner(&(&a * c(2.0)), &b).unwrap() - 2.0 * inner(&a, &b).unwrap()).abs() < 1e-16);
        assert!(inner(&a, &CMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn tangents() {
        let pt = SpherePoint::from_real(1.0, 0.0);
        let (dx, dbarx) = tangent_vectors(spec(2), 1, pt).unwrap();
        let fd = Stencil::new(1e-4)
            .unwrap()
            .first(|q| immersion(spec(2), 1, q).map(AlgElement::into_matrix), pt, false)
            .unwrap();
        assert!((&dx - &fd).norm() < TOL_FD);
        assert!((dx.adjoint() + &dbarx).norm() < TOL_EXACT);
        let g = metric(spec(2), 1, pt).unwrap();
        assert!((inner_complex(&dx, &dbarx).unwrap().re - g.g12).abs() < TOL_CLOSED);
        // N = 1, k = 0: ||dX||_F^2 = 2 g12
        let pt = SpherePoint::new(Complex64::new(0.4, -0.2));
        let (dx, _) = tangent_vectors(spec(1), 0, pt).unwrap();
        assert!((dx.norm_squared() - 2.0 * metric(spec(1), 0, pt).unwrap().g12).abs() < TOL_CLOSED);
        assert!(tangent_vectors(spec(1), 0, SpherePoint::origin()).is_err());
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric(spec(2), 1, SpherePoint::from_real(1.0, 0.0)).unwrap().g12, 0.5);
        assert_eq!(metric(spec(3), 1, SpherePoint::origin()).unwrap().gamma_111, c(0.0));
        assert!(null_metric_defect(spec(6), 3, SpherePoint::from_real(0.3, 2.0)).unwrap() < TOL_CLOSED);
    }

    #[test]
    fn christoffel_from_log_metric() {
        let pt = SpherePoint::new(Complex64::new(0.8, -0.5));
        let g = metric(spec(4), 1, pt).unwrap();
        let num = Stencil::new(1e-4)
            .unwrap()
            .first(|q| metric(spec(4), 1, q).map(|m| m.g12.ln()), pt, false)
            .unwrap();
        assert!((num - g.gamma_111).norm() < TOL_FD);
    }

    #[test]
    fn second_fundamental_form() {
        let pt = SpherePoint::new(Complex64::new(0.9, 0.4));
        let form = second_form(spec(3), 1, pt, 1e-4).unwrap();
        let dp = projector_dxi(spec(3), 1, pt).unwrap();
        let direct = commutator(&dp.adjoint(), &dp) * (I * 2.0);
        assert!((&form.mixed - &direct).norm() < TOL_CLOSED);
        let (dx, _) = tangent_vectors(spec(3), 1, pt).unwrap();
        assert!(inner_complex(&form.mixed, &dx).unwrap().norm() < TOL_CLOSED);
        // The mixed coefficient is 2 d dbar X.
        let fd = Stencil::new(1e-3)
            .unwrap()
            .mixed(|q| immersion(spec(3), 1, q).map(AlgElement::into_matrix), pt)
            .unwrap();
        assert!((&form.mixed - fd * c(2.0)).norm() < TOL_FD);
        // The pure coefficients are normal as well.
        let (_, dbarx) = tangent_vectors(spec(3), 1, pt).unwrap();
        assert!(inner_complex(&form.dd, &dx).unwrap().norm() < 1e-5);
        assert!(inner_complex(&form.dd, &dbarx).unwrap().norm() < 1e-5);

        let form = second_form(spec(1), 0, pt, 1e-4).unwrap();
        let p0 = projector_closed(spec(1), 0, pt).unwrap().into_matrix();
        let p1 = projector_closed(spec(1), 1, pt).unwrap().into_matrix();
        let want = (p0 - p1) * (I * 2.0 / (1.0 + pt.rho()).powi(2));
        assert!((form.mixed - want).norm() < TOL_CLOSED);
    }

    #[test]
    fn curvature_values() {
        assert_eq!(gaussian_curvature(spec(2), 1).unwrap(), 1.0);
        assert_eq!(gaussian_curvature(spec(2), 0).unwrap(), 2.0);
        let k = gaussian_curvature_numeric(spec(4), 2, SpherePoint::new(Complex64::new(0.9, -0.2)), 1e-3).unwrap();
        let closed = gaussian_curvature(spec(4), 2).unwrap();
        assert!((k - closed).abs() < 1e-5 * closed);
        assert!(gaussian_curvature_numeric(spec(3), 1, SpherePoint::origin(), 1e-3).is_ok());
    }

    #[test]
    fn mean_curvature_routes_agree() {
        let pt = SpherePoint::from_real(1.0, 0.0);
        let h = mean_curvature(spec(2), 1, pt).unwrap();
        assert!(h.trace_defect() < TOL_CLOSED);
        let pt = SpherePoint::new(Complex64::new(0.4, 0.7));
        for (n, k) in [(4, 1), (2, 1), (5, 0), (5, 5), (6, 3)] {
            let closed = mean_curvature(spec(n), k, pt).unwrap();
            let products = mean_curvature_from_products(spec(n), k, pt).unwrap();
            let decomposed = mean_curvature_decomposition(spec(n), k, pt).unwrap();
            assert!((closed.matrix() - products.matrix()).norm() < TOL_CLOSED);
            assert!((decomposed.matrix() - products.matrix()).norm() < TOL_CLOSED);
            let (dx, dbarx) = tangent_vectors(spec(n), k, pt).unwrap();
            assert!(inner_complex(closed.matrix(), &dx).unwrap().norm() < TOL_CLOSED);
            assert!(inner_complex(closed.matrix(), &dbarx).unwrap().norm() < TOL_CLOSED);
        }
    }

    #[test]
    fn structure_examples() {
        assert!(structure_checks(spec(2), SpherePoint::from_real(1.0, 0.0)).max_commutator < TOL_CLOSED);
        assert!(structure_checks(spec(2), SpherePoint::from_real(0.3, 0.0)).alternating_sum < TOL_CLOSED);
        assert!(structure_checks(spec(1), SpherePoint::from_real(0.0, 2.0)).min_poly[0] < TOL_CLOSED);
    }

    proptest! {
        #[test]
        fn structure_holds_everywhere(n in 1usize..=9, r in 0.0f64..10.0, phi in 0.0f64..6.3) {
            let report = structure_checks(spec(n), SpherePoint::from_polar(r, phi));
            prop_assert!(report.max() < TOL_CLOSED);
        }

        #[test]
        fn radius_is_constant(n in 1usize..=8, kk in 0usize..=8, r in 0.0f64..10.0, phi in 0.0f64..6.3) {
            let k = kk % (n + 1);
            let x = immersion(spec(n), k, SpherePoint::from_polar(r, phi)).unwrap();
            prop_assert!((inner(x.matrix(), x.matrix()).unwrap() - radius_sq_direct(spec(n), k)).abs() < 1e-12);
        }
    }
}
