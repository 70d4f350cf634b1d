//! Veronese solutions f_k, their projectors P_k and the identities they satisfy.
//!
//! Two evaluation routes exist for most quantities. The `*_closed` and plain functions follow the
//! hypergeometric formulas literally and carry the 1/xi factors those formulas have. The
//! `*_regular` functions go through [`Frame`], which is finite everywhere including xi = 0.

mod frame;
mod identities;
mod ladder;

pub use frame::Frame;
pub use identities::{clebsch_coeffs, derivative_products, frenet_products, lagrangian_density, mixed_second_derivative, FrenetProducts};
pub use ladder::{
    conservation_residual, el_residual, el_residual_field, lower_projector, lower_vector, perturbed_projector, raise_projector,
    raise_vector, vector_dxi, vector_dxibar, ProjectorJet,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kraw::{binomial, eval, eval_with_magnitude, p_of};
use crate::model::{c, CMatrix, CVector, HermProjector, ModelSpec, SpherePoint};
use crate::tolerance::DEGENERATE_NORM_SQ;

/// The holomorphic seed (f_0)_r = sqrt(C(N,r)) xi_+^r.
pub fn veronese_f0(spec: ModelSpec, point: SpherePoint) -> CVector {
    let n = spec.n();
    let xi = point.xi_plus();
    CVector::from_fn(n + 1, |r, _| xi.powu(r as u32) * binomial(n, r).sqrt())
}

/// N!/(N-k)!
pub(crate) fn falling_factorial(n: usize, k: usize) -> f64 {
    (n - k + 1..=n).map(|v| v as f64).product()
}

/// (f_k)_j = N!/(N-k)! (-xi_-/(1+rho))^k sqrt(C(N,j)) xi_+^j K_j(k; p, N).
pub fn veronese_fk(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    if k == 0 {
        return Ok(veronese_f0(spec, point));
    }
    point.require_nonzero("f_k for k >= 1")?;
    let n = spec.n();
    let p = p_of(point);
    let xi = point.xi_plus();
    let prefactor = (-point.xi_minus() / (1.0 + point.rho())).powu(k as u32) * falling_factorial(n, k);
    Ok(CVector::from_fn(n + 1, |j, _| {
        prefactor * xi.powu(j as u32) * (binomial(n, j).sqrt() * eval(j, k, n, p))
    }))
}

/// f_k from the pole-free frame; equals `veronese_fk` away from the origin and its limit at it.
pub fn veronese_fk_regular(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    Ok(Frame::new(spec, point).fk(k))
}

/// P = f f^dagger / f^dagger f.
pub fn projector_from_vector(f: &CVector) -> Result<HermProjector> {
    let norm_sq = f.norm_squared();
    if !(norm_sq >= DEGENERATE_NORM_SQ) || !norm_sq.is_finite() {
        return Err(Error::DegenerateVector(norm_sq));
    }
    Ok(HermProjector::from_matrix_unchecked(f * f.adjoint() / c(norm_sq)))
}

/// (P_k)_ij = C(N,k) sqrt(C(N,i) C(N,j)) xi_+^(k+i) xi_-^(k+j) K_i(k) K_j(k) / (1+rho)^N.
pub fn projector_closed(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<HermProjector> {
    spec.check_index(k)?;
    if k == 0 && point.is_origin() {
        return projector_regular(spec, 0, point);
    }
    if k > 0 {
        point.require_nonzero("P_k for k >= 1")?;
    }
    let n = spec.n();
    let p = p_of(point);
    // Split the weight (1+rho)^N evenly between the two factors.
    let half = (1.0 + point.rho()).powf(n as f64 / 2.0);
    let (x, xbar) = (point.xi_plus(), point.xi_minus());
    let g = CVector::from_fn(n + 1, |i, _| {
        let kval = if k == 0 { 1.0 } else { eval(i, k, n, p) };
        x.powu(i as u32) * xbar.powu(k as u32) * (binomial(n, i).sqrt() * kval / half)
    });
    Ok(HermProjector::from_matrix_unchecked(&g * g.adjoint() * c(binomial(n, k))))
}

/// Rounding amplification of `projector_closed`: sqrt(C(N,k)) times the norm of the
/// factor vector rebuilt from absolute Krawtchouk terms. Equals 1 when no cancellation occurs.
pub fn projector_closed_conditioning(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<f64> {
    spec.check_index(k)?;
    if k == 0 {
        return Ok(1.0);
    }
    point.require_nonzero("P_k for k >= 1")?;
    let n = spec.n();
    let p = p_of(point);
    let r = point.radius();
    let half = (1.0 + point.rho()).powf(n as f64 / 2.0);
    let sum: f64 = (0..=n)
        .map(|i| {
            let m = r.powi((i + k) as i32) * binomial(n, i).sqrt() * eval_with_magnitude(i, k, n, p).1 / half;
            m * m
        })
        .sum();
    Ok((binomial(n, k) * sum).sqrt().max(1.0))
}

/// P_k from the pole-free frame, valid at every point.
pub fn projector_regular(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<HermProjector> {
    spec.check_index(k)?;
    Ok(HermProjector::from_matrix_unchecked(Frame::new(spec, point).projector(k as isize)))
}

/// The closed derivative dP_k, which carries an explicit 1/xi_+.
pub fn projector_dxi(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CMatrix> {
    spec.check_index(k)?;
    point.require_nonzero("dP_k")?;
    Ok(Frame::new(spec, point).dp_closed(k))
}

/// dbar P_k = (dP_k)^dagger.
pub fn projector_dxibar(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CMatrix> {
    projector_dxi(spec, k, point).map(|m| m.adjoint())
}

/// dP_k = P_k dP_k - P_{k+1} dP_{k+1}, finite at every point.
pub fn projector_dxi_regular(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CMatrix> {
    spec.check_index(k)?;
    Ok(Frame::new(spec, point).dp_regular(k as isize))
}

/// Largest |<f_a, f_b>| / (|f_a| |f_b|) over a != b.
pub fn orthogonality_defect(vectors: &[CVector]) -> f64 {
    let mut worst = 0.0f64;
    for (a, fa) in vectors.iter().enumerate() {
        for fb in &vectors[a + 1..] {
            let overlap: Complex64 = fa.dotc(fb);
            worst = worst.max(overlap.norm() / (fa.norm() * fb.norm()));
        }
    }
    worst
}

/// Defects of P_j P_k = delta_jk P_j and sum_k P_k = 1 over the whole chain.
pub fn completeness_defects(projectors: &[CMatrix]) -> (f64, f64) {
    let dim = projectors.first().map_or(0, |p| p.nrows());
    let mut orth = 0.0f64;
    for (j, pj) in projectors.iter().enumerate() {
        for (k, pk) in projectors.iter().enumerate() {
            let want = if j == k { pj.clone() } else { CMatrix::zeros(dim, dim) };
            orth = orth.max((pj * pk - want).norm());
        }
    }
    let total = projectors.iter().fold(CMatrix::zeros(dim, dim), |acc, p| acc + p);
    (orth, (total - CMatrix::identity(dim, dim)).norm())
}

/// Collinearity defect |a|^2 |b|^2 - |<a, b>|^2, relative to |a|^2 |b|^2.
pub fn collinearity_defect(a: &CVector, b: &CVector) -> f64 {
    let (na, nb) = (a.norm_squared(), b.norm_squared());
    let overlap = a.dotc(b).norm_sqr();
    ((na * nb - overlap) / (na * nb)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::projector_defects;
    use crate::tolerance::{TOL_CLOSED, TOL_EXACT};
    use proptest::prelude::*;

    fn spec(n: usize) -> ModelSpec {
        ModelSpec::new(n).unwrap()
    }

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn conditioning_bounds_closed_form_error() {
        let pt = SpherePoint::new(Complex64::new(0.1, 0.05));
        assert_eq!(projector_closed_conditioning(spec(6), 0, pt).unwrap(), 1.0);
        for n in [8, 20, 30] {
            for k in 1..n {
                let kappa = projector_closed_conditioning(spec(n), k, pt).unwrap();
                assert!(kappa >= 1.0);
                let closed = projector_closed(spec(n), k, pt).unwrap();
                let regular = projector_regular(spec(n), k, pt).unwrap();
                assert!(
                    (closed.matrix() - regular.matrix()).norm() < 1e-13 * kappa * n as f64,
                    "N = {n}, k = {k}"
                );
            }
        }
        assert!(projector_closed_conditioning(spec(30), 15, pt).unwrap() > 10.0);
    }

    #[test]
    fn seed_examples() {
        let f = veronese_f0(spec(1), SpherePoint::origin());
        assert_eq!(f.as_slice(), &[c(1.0), c(0.0)]);
        let f = veronese_f0(spec(2), SpherePoint::from_real(1.0, 0.0));
        assert!((f[1] - c(2f64.sqrt())).norm() < 1e-15);
        let f = veronese_f0(spec(4), SpherePoint::from_real(0.0, 2.0));
        assert!((f[2] - c(-4.0 * 6f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn first_raised_solution() {
        let point = SpherePoint::from_real(1.0, 0.0);
        let f1 = veronese_fk(spec(2), 1, point).unwrap();
        let want = [c(-1.0), c(0.0), c(1.0)];
        for (a, b) in f1.iter().zip(want) {
            assert!((a - b).norm() < 1e-15);
        }
        let f0 = veronese_fk(spec(2), 0, point).unwrap();
        assert!(f0.dotc(&f1).norm() < 1e-15);
        assert_eq!(veronese_f0(spec(2), point), f0);
        assert!(veronese_fk(spec(2), 1, SpherePoint::origin()).is_err());
    }

    #[test]
    fn projector_from_vector_examples() {
        let p = projector_from_vector(&CVector::from_vec(vec![c(1.0), c(0.0)])).unwrap();
        assert_eq!(p.matrix()[(0, 0)], c(1.0));
        assert_eq!(p.matrix()[(1, 1)], c(0.0));
        let p = projector_from_vector(&CVector::from_vec(vec![c(3.0), c(3.0)])).unwrap();
        assert!(p.matrix().iter().all(|z| (z - c(0.5)).norm() < 1e-16));
        assert!(matches!(projector_from_vector(&CVector::zeros(3)), Err(Error::DegenerateVector(_))));
    }

    #[test]
    fn two_constructions_agree() {
        for (n, k, xi) in [
            (2, 1, Complex64::new(1.0, 0.0)),
            (2, 2, Complex64::new(1.0, 0.0)),
            (6, 3, Complex64::new(0.7, 0.2)),
            (9, 4, Complex64::new(-3.0, 5.0)),
        ] {
            let point = SpherePoint::new(xi);
            let closed = projector_closed(spec(n), k, point).unwrap();
            let from_f = projector_from_vector(&veronese_fk(spec(n), k, point).unwrap()).unwrap();
            let regular = projector_regular(spec(n), k, point).unwrap();
            assert!(close(closed.matrix(), from_f.matrix(), TOL_CLOSED));
            assert!(close(closed.matrix(), regular.matrix(), TOL_CLOSED));
            let fk = veronese_fk(spec(n), k, point).unwrap();
            let fr = veronese_fk_regular(spec(n), k, point).unwrap();
            assert!((&fk - &fr).norm() < TOL_CLOSED * fk.norm());
        }
    }

    #[test]
    fn origin_limits() {
        let p = projector_closed(spec(1), 0, SpherePoint::origin()).unwrap();
        assert!(close(
            p.matrix(),
            &CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(0.0)])),
            TOL_EXACT
        ));
        assert!(projector_closed(spec(3), 2, SpherePoint::origin()).is_err());
        for k in 0..=4 {
            let p = projector_regular(spec(4), k, SpherePoint::origin()).unwrap();
            let mut want = CMatrix::zeros(5, 5);
            want[(k, k)] = c(1.0);
            assert!(close(p.matrix(), &want, TOL_EXACT));
        }
    }

    #[test]
    fn derivative_properties() {
        let point = SpherePoint::from_real(0.3, -0.8);
        let dp = projector_dxi(spec(4), 2, point).unwrap();
        assert!(dp.trace().norm() < TOL_EXACT);
        assert!(close(&dp.adjoint(), &projector_dxibar(spec(4), 2, point).unwrap(), TOL_EXACT));
        assert!(close(&dp, &projector_dxi_regular(spec(4), 2, point).unwrap(), TOL_CLOSED));
        assert!(projector_dxi(spec(4), 2, SpherePoint::origin()).is_err());
    }

    #[test]
    fn chain_orthogonal_and_complete() {
        let point = SpherePoint::from_real(2.5, 1.0);
        let n = 7;
        let ps: Vec<CMatrix> = (0..=n)
            .map(|k| projector_closed(spec(n), k, point).unwrap().into_matrix())
            .collect();
        let (orth, complete) = completeness_defects(&ps);
        assert!(orth < TOL_CLOSED && complete < TOL_CLOSED);
        let fs: Vec<CVector> = (0..=n).map(|k| veronese_fk(spec(n), k, point).unwrap()).collect();
        assert!(orthogonality_defect(&fs) < TOL_CLOSED);
    }

    proptest! {
        #[test]
        fn projector_axioms(n in 1usize..=12, kk in 0usize..=12, r in 0.1f64..10.0, phi in 0.0f64..6.3) {
            let k = kk % (n + 1);
            let point = SpherePoint::from_polar(r, phi);
            let p = projector_closed(spec(n), k, point).unwrap();
            prop_assert!(projector_defects(p.matrix()).max() < TOL_EXACT);
        }

        #[test]
        fn gauge_invariance(n in 1usize..=8, re in -3.0f64..3.0, im in -3.0f64..3.0, r in 0.1f64..5.0) {
            prop_assume!(re.abs() + im.abs() > 1e-3);
            let f = veronese_fk(spec(n), n / 2, SpherePoint::from_polar(r, 0.4)).unwrap();
            let scaled = &f * Complex64::new(re, im);
            let a = projector_from_vector(&f).unwrap();
            let b = projector_from_vector(&scaled).unwrap();
            prop_assert!(close(a.matrix(), b.matrix(), TOL_EXACT));
        }

        #[test]
        fn regular_derivative_is_finite_near_origin(n in 1usize..=10, r in 0.0f64..1e-3) {
            let point = SpherePoint::from_polar(r, 1.0);
            for k in 0..=n {
                let dp = projector_dxi_regular(spec(n), k, point).unwrap();
                prop_assert!(dp.iter().all(|z| z.is_finite()));
            }
        }
    }
}
