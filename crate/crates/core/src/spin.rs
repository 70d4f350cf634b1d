//! The su(2) spin-s generators carried by the Veronese chain.
//!
//! S^z = sum_k (k - s) P_k and its ladder partners act on the solutions f_k algebraically, giving a
//! derivative-free route through the chain.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{c, commutator, CMatrix, CVector, HermProjector, ModelSpec, SpherePoint};
use crate::sigma::veronese_fk_regular;
use crate::tolerance::ANNIHILATION_RELATIVE;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinTriple {
    pub s_z: CMatrix,
    pub s_plus: CMatrix,
    pub s_minus: CMatrix,
}

impl SpinTriple {
    /// Largest Frobenius defect among [Sz, S+] = S+, [Sz, S-] = -S-, [S+, S-] = 2 Sz.
    pub fn commutator_defect(&self) -> f64 {
        let a = (commutator(&self.s_z, &self.s_plus) - &self.s_plus).norm();
        let b = (commutator(&self.s_z, &self.s_minus) + &self.s_minus).norm();
        let d = (commutator(&self.s_plus, &self.s_minus) - &self.s_z * c(2.0)).norm();
        a.max(b).max(d)
    }

    /// Eigenvalues of S^z in increasing order; S^z is Hermitian.
    pub fn sz_spectrum(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.s_z.clone().symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

/// The constant representation: sigma^z = diag(s - i), sigma^+ above and sigma^- below the diagonal.
pub fn sigma_triple(spec: ModelSpec) -> SpinTriple {
    let (n, dim) = (spec.n(), spec.dim());
    let s = spec.s();
    let nf = n as f64;
    let s_z = CMatrix::from_fn(dim, dim, |i, j| if i == j { c(s - i as f64) } else { c(0.0) });
    let s_plus = CMatrix::from_fn(dim, dim, |i, j| {
        if i + 1 == j {
            c(((nf - j as f64 + 1.0) * j as f64).sqrt())
        } else {
            c(0.0)
        }
    });
    let s_minus = CMatrix::from_fn(dim, dim, |i, j| {
        if j + 1 == i {
            c(((nf - i as f64 + 1.0) * i as f64).sqrt())
        } else {
            c(0.0)
        }
    });
    SpinTriple { s_z, s_plus, s_minus }
}

/// The point-dependent generators, conjugates of the constant ones.
pub fn spin_triple(spec: ModelSpec, point: SpherePoint) -> SpinTriple {
    let sigma = sigma_triple(spec);
    let (x, xbar, rho) = (point.xi_plus(), point.xi_minus(), point.rho());
    let inv = c(1.0 / (1.0 + rho));
    let s_z = (&sigma.s_z * c(rho - 1.0) - &sigma.s_minus * x - &sigma.s_plus * xbar) * inv;
    let s_plus = (&sigma.s_z * (xbar * 2.0) - &sigma.s_minus + &sigma.s_plus * (xbar * xbar)) * inv;
    let s_minus = (&sigma.s_z * (x * 2.0) + &sigma.s_minus * (x * x) - &sigma.s_plus) * inv;
    SpinTriple { s_z, s_plus, s_minus }
}

/// S^z entry by entry in its tridiagonal form.
pub fn sz_tridiagonal(spec: ModelSpec, point: SpherePoint) -> CMatrix {
    let dim = spec.dim();
    let (nf, s, rho) = (spec.n() as f64, spec.s(), point.rho());
    let (x, xbar) = (point.xi_plus(), point.xi_minus());
    CMatrix::from_fn(dim, dim, |i, j| {
        let (fi, fj) = (i as f64, j as f64);
        if i == j {
            c((1.0 - rho) / (1.0 + rho) * (fi - s))
        } else if j + 1 == i {
            -x / (1.0 + rho) * (fi * (nf + 1.0 - fi)).sqrt()
        } else if i + 1 == j {
            -xbar / (1.0 + rho) * (fj * (nf - fj + 1.0)).sqrt()
        } else {
            c(0.0)
        }
    })
}

/// f_{k+1} = -S^+ f_k / (1 + rho); zero at k = N.
pub fn spin_raise_f(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    if k == spec.n() {
        return Ok(CVector::zeros(spec.dim()));
    }
    let f = veronese_fk_regular(spec, k, point)?;
    Ok(spin_triple(spec, point).s_plus * f * c(-1.0 / (1.0 + point.rho())))
}

/// f_{k-1} = (1 + rho) S^- f_k / (k (k - 1 - N)); zero at k = 0.
pub fn spin_lower_f(spec: ModelSpec, k: usize, point: SpherePoint) -> Result<CVector> {
    spec.check_index(k)?;
    if k == 0 {
        return Ok(CVector::zeros(spec.dim()));
    }
    let f = veronese_fk_regular(spec, k, point)?;
    let kf = k as f64;
    let factor = (1.0 + point.rho()) / (kf * (kf - 1.0 - spec.n() as f64));
    Ok(spin_triple(spec, point).s_minus * f * c(factor))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// S^+ P S^- / tr(S^+ P S^-) going up, S^- P S^+ / tr(...) going down.
pub fn spin_projector_step(spec: ModelSpec, p: &HermProjector, point: SpherePoint, direction: Direction) -> Result<HermProjector> {
    if p.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: spec.dim(),
        });
    }
    let t = spin_triple(spec, point);
    let (a, b) = match direction {
        Direction::Up => (&t.s_plus, &t.s_minus),
        Direction::Down => (&t.s_minus, &t.s_plus),
    };
    let product = a * p.matrix() * b;
    let trace = product.trace().re;
    let threshold = ANNIHILATION_RELATIVE * a.norm_squared();
    if !(trace.abs() > threshold) {
        return Err(Error::Annihilated { trace, threshold });
    }
    Ok(HermProjector::from_matrix_unchecked(product / Complex64::new(trace, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::{projector_closed, projector_regular, veronese_fk};
    use crate::tolerance::{TOL_CLOSED, TOL_EXACT};
    use proptest::prelude::*;

    fn spec(n: usize) -> ModelSpec {
        ModelSpec::new(n).unwrap()
    }

    #[test]
    fn constant_representation() {
        let t = sigma_triple(spec(1));
        assert_eq!(t.s_z[(0, 0)], c(0.5));
        assert_eq!(t.s_z[(1, 1)], c(-0.5));
        let t = sigma_triple(spec(2));
        assert!((t.s_plus[(0, 1)] - c(2f64.sqrt())).norm() < 1e-15);
        assert!((t.s_plus[(1, 2)] - c(2f64.sqrt())).norm() < 1e-15);
        for n in 1..=12 {
            assert!(sigma_triple(spec(n)).commutator_defect() < TOL_EXACT);
        }
    }

    #[test]
    fn origin_values() {
        let s = sigma_triple(spec(3));
        let t = spin_triple(spec(3), SpherePoint::origin());
        assert!((&t.s_z + &s.s_z).norm() < TOL_EXACT);
        assert!((&t.s_plus + &s.s_minus).norm() < TOL_EXACT);
        assert!((&t.s_minus + &s.s_plus).norm() < TOL_EXACT);
    }

    #[test]
    fn sz_is_the_weighted_projector_sum() {
        let pt = SpherePoint::from_real(1.0, 0.0);
        let n = 2;
        let sum = (0..=n).fold(CMatrix::zeros(3, 3), |acc, k| {
            acc + projector_closed(spec(n), k, pt).unwrap().into_matrix() * c(k as f64 - 1.0)
        });
        assert!((spin_triple(spec(n), pt).s_z - sum).norm() < TOL_CLOSED);
        let pt = SpherePoint::new(Complex64::new(0.5, -0.5));
        assert!((spin_triple(spec(4), pt).s_z - sz_tridiagonal(spec(4), pt)).norm() < TOL_CLOSED);
    }

    #[test]
    fn ladder_on_solutions() {
        let pt = SpherePoint::from_real(1.0, 0.0);
        let t = spin_triple(spec(2), pt);
        let top = veronese_fk(spec(2), 2, pt).unwrap();
        assert!((&t.s_plus * top).norm() < TOL_CLOSED);
        let up = spin_raise_f(spec(2), 0, pt).unwrap();
        assert!((up - veronese_fk(spec(2), 1, pt).unwrap()).norm() < TOL_CLOSED);

        let pt = SpherePoint::from_real(0.0, 0.8);
        let f3 = veronese_fk(spec(4), 3, pt).unwrap();
        let t = spin_triple(spec(4), pt);
        assert!((&t.s_z * &f3 - &f3 * c(1.0)).norm() < TOL_CLOSED * f3.norm());

        // The lowering factor k(k-1-N)/(1+rho).
        let n = 5;
        let pt = SpherePoint::new(Complex64::new(-0.7, 1.1));
        for k in 1..=n {
            let down = spin_lower_f(spec(n), k, pt).unwrap();
            let want = veronese_fk(spec(n), k - 1, pt).unwrap();
            assert!((&down - &want).norm() < TOL_CLOSED * want.norm());
        }
        assert_eq!(spin_lower_f(spec(n), 0, pt).unwrap(), CVector::zeros(n + 1));
    }

    #[test]
    fn projector_steps() {
        let pt = SpherePoint::from_real(1.0, 0.0);
        let p0 = projector_closed(spec(2), 0, pt).unwrap();
        let p1 = spin_projector_step(spec(2), &p0, pt, Direction::Up).unwrap();
        assert!((p1.matrix() - projector_closed(spec(2), 1, pt).unwrap().matrix()).norm() < TOL_CLOSED);
        assert!(matches!(
            spin_projector_step(spec(2), &p0, pt, Direction::Down),
            Err(Error::Annihilated { .. })
        ));

        let pt = SpherePoint::from_real(1.2, 0.0);
        let p2 = projector_closed(spec(4), 2, pt).unwrap();
        let down = spin_projector_step(spec(4), &p2, pt, Direction::Down).unwrap();
        let back = spin_projector_step(spec(4), &down, pt, Direction::Up).unwrap();
        assert!((back.matrix() - p2.matrix()).norm() < TOL_CLOSED);
    }

    proptest! {
        #[test]
        fn point_triple_is_su2(n in 1usize..=12, r in 0.0f64..10.0, phi in 0.0f64..6.3) {
            let t = spin_triple(spec(n), SpherePoint::from_polar(r, phi));
            prop_assert!(t.commutator_defect() < TOL_EXACT * (n as f64).max(1.0) * 10.0);
            let s = spec(n).s();
            for (i, v) in t.sz_spectrum().iter().enumerate() {
                prop_assert!((v - (i as f64 - s)).abs() < 1e-10);
            }
        }

        #[test]
        fn eigenvector_ladder(n in 1usize..=10, r in 0.1f64..5.0, phi in 0.0f64..6.3) {
            let pt = SpherePoint::from_polar(r, phi);
            let t = spin_triple(spec(n), pt);
            for k in 0..=n {
                let f = veronese_fk_regular(spec(n), k, pt).unwrap();
                for (op, shift) in [(&t.s_plus, 1.0), (&t.s_minus, -1.0)] {
                    let g = op * &f;
                    if g.norm() > 1e-8 * f.norm() {
                        let want = k as f64 + shift - spec(n).s();
                        prop_assert!((&t.s_z * &g - &g * c(want)).norm() < 1e-10 * g.norm());
                    }
                }
                let p = projector_regular(spec(n), k, pt).unwrap();
                prop_assert!(p.defects().max() < TOL_EXACT);
            }
        }
    }
}
