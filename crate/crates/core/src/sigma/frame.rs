use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::kraw::{binomial, weighted};
use crate::model::{c, CMatrix, CVector, ModelSpec, SpherePoint};

/// The orthonormal moving frame of the Veronese sequence at one point.
///
/// Column k is the unit vector e_k with entries sqrt(C(N,k) C(N,j)) W_j(k), so P_k = e_k e_k^dagger.
/// Every closed form of the model is a short bilinear expression in these columns.
///
/// Entry j of e_k is e^{i(j-k) phi} times a real number, and the real parts are the eigenvectors
/// of S^z at the real point |xi|, a symmetric tridiagonal matrix with eigenvalues k - s. Computing
/// them that way avoids the cancellation in the alternating sum for W, which grows like 2^(N/2).
/// The sum is used only to fix the sign of each eigenvector.
#[derive(Debug, Clone)]
pub struct Frame {
    spec: ModelSpec,
    point: SpherePoint,
    cols: Vec<CVector>,
}

impl Frame {
    pub fn new(spec: ModelSpec, point: SpherePoint) -> Self {
        let n = spec.n();
        let (r, rho) = (point.radius(), point.rho());
        let s = spec.s();
        let sz = DMatrix::from_fn(n + 1, n + 1, |i, j| {
            let (lo, hi) = (i.min(j), i.max(j));
            if i == j {
                (1.0 - rho) / (1.0 + rho) * (i as f64 - s)
            } else if hi == lo + 1 {
                -r / (1.0 + rho) * ((hi * (n + 1 - hi)) as f64).sqrt()
            } else {
                0.0
            }
        });
        let eigen = SymmetricEigen::new(sz);
        let mut real = vec![None; n + 1];
        for (idx, lambda) in eigen.eigenvalues.iter().enumerate() {
            let k = (lambda + s).round().clamp(0.0, n as f64) as usize;
            real[k] = Some(eigen.eigenvectors.column(idx).into_owned());
        }
        let on_axis = SpherePoint::from_real(r, 0.0);
        let phase = point.xi_plus().arg();
        let cols = real
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let v = v.expect("eigenvalues of S^z are k - s");
                let (pivot, _) = v
                    .iter()
                    .enumerate()
                    .fold((0, 0.0), |best, (j, x)| if x.abs() > best.1 { (j, x.abs()) } else { best });
                let reference = weighted(pivot, k, n, on_axis).re * (binomial(n, k) * binomial(n, pivot)).sqrt();
                let sign = if reference * v[pivot] < 0.0 { -1.0 } else { 1.0 };
                CVector::from_fn(n + 1, |j, _| Complex64::from_polar(sign * v[j], (j as f64 - k as f64) * phase))
            })
            .collect();
        Self { spec, point, cols }
    }

    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn point(&self) -> SpherePoint {
        self.point
    }

    /// e_k; `None` outside 0..=N.
    pub fn column(&self, k: isize) -> Option<&CVector> {
        usize::try_from(k).ok().and_then(|k| self.cols.get(k))
    }

    fn outer(&self, a: isize, b: isize) -> CMatrix {
        match (self.column(a), self.column(b)) {
            (Some(x), Some(y)) => x * y.adjoint(),
            _ => CMatrix::zeros(self.spec.dim(), self.spec.dim()),
        }
    }

    /// P_k, or zero outside the chain.
    pub fn projector(&self, k: isize) -> CMatrix {
        self.outer(k, k)
    }

    /// sqrt(k (N - k + 1)), the coupling between e_{k-1} and e_k; zero at the ends.
    pub fn coupling(&self, k: isize) -> f64 {
        let n = self.spec.n() as isize;
        if k <= 0 || k > n {
            0.0
        } else {
            ((k * (n - k + 1)) as f64).sqrt()
        }
    }

    fn one_plus_rho(&self) -> f64 {
        1.0 + self.point.rho()
    }

    /// P_k dP_k = sqrt(k(N-k+1))/(1+rho) e_k e_{k-1}^dagger. Pole free.
    pub fn p_dp(&self, k: isize) -> CMatrix {
        self.outer(k, k - 1) * c(self.coupling(k) / self.one_plus_rho())
    }

    /// dbar P_k P_k, the adjoint of `p_dp`.
    pub fn dbarp_p(&self, k: isize) -> CMatrix {
        self.outer(k - 1, k) * c(self.coupling(k) / self.one_plus_rho())
    }

    /// dP_k through the chain relation dP_k = P_k dP_k - P_{k+1} dP_{k+1}; finite at the origin.
    pub fn dp_regular(&self, k: isize) -> CMatrix {
        self.p_dp(k) - self.p_dp(k + 1)
    }

    pub fn dbarp_regular(&self, k: isize) -> CMatrix {
        self.dp_regular(k).adjoint()
    }

    /// diag((i - N + k) rho + i - k), the coefficient shared by the one-sided Frenet products.
    pub(crate) fn frenet_diag(&self, k: usize) -> CVector {
        let (n, rho) = (self.spec.n() as f64, self.point.rho());
        let kf = k as f64;
        CVector::from_fn(self.spec.dim(), |i, _| c((i as f64 - n + kf) * rho + i as f64 - kf))
    }

    /// Row scaling diag(d) * m.
    pub(crate) fn scale_rows(d: &CVector, m: CMatrix) -> CMatrix {
        let mut m = m;
        for (i, mut row) in m.row_iter_mut().enumerate() {
            row *= d[i];
        }
        m
    }

    /// dP_k P_k = [D e_k e_k^dagger + sqrt(k(N-k+1)) xi_- e_{k-1} e_k^dagger] / (xi_+ (1+rho)).
    /// Caller guarantees xi_+ != 0.
    pub(crate) fn dp_p_closed(&self, k: usize) -> CMatrix {
        let ki = k as isize;
        let d = self.frenet_diag(k);
        let x = self.point.xi_plus();
        let body = Self::scale_rows(&d, self.outer(ki, ki)) + self.outer(ki - 1, ki) * (self.point.xi_minus() * self.coupling(ki));
        body / (x * self.one_plus_rho())
    }

    /// The closed derivative dP_k carrying a 1/xi_+ factor. Caller guarantees xi_+ != 0.
    pub(crate) fn dp_closed(&self, k: usize) -> CMatrix {
        let ki = k as isize;
        let (n, rho) = (self.spec.n() as f64, self.point.rho());
        let kf = k as f64;
        let b = CVector::from_fn(self.spec.dim(), |i, _| c((i as f64 - n) * rho + i as f64 - kf * (1.0 - rho)));
        let (x, xbar) = (self.point.xi_plus(), self.point.xi_minus());
        let g = self.coupling(ki);
        let body = Self::scale_rows(&b, self.outer(ki, ki)) + (self.outer(ki - 1, ki) * xbar + self.outer(ki, ki - 1) * x) * c(g);
        body / (x * self.one_plus_rho())
    }

    /// |f_k|^2 = N! k! / (N-k)! (1+rho)^(N-2k).
    pub(crate) fn fk_scale(&self, k: usize) -> Complex64 {
        let n = self.spec.n();
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let falling: f64 = (n - k + 1..=n).map(|v| v as f64).product();
        let power = self.one_plus_rho().powf(n as f64 / 2.0 - k as f64);
        c(sign * falling * power / binomial(n, k).sqrt())
    }

    /// f_k normalised as in the closed solution formula.
    pub fn fk(&self, k: usize) -> CVector {
        &self.cols[k] * self.fk_scale(k)
    }
}
