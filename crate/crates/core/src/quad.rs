//! Sphere quadrature and finite-difference Wirtinger derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{c, CMatrix, CVector, SpherePoint, I};
use crate::summation::pairwise;
use crate::tolerance::{EXCLUDED_RADIUS, QUADRATURE_CONVERGENCE};

/// Product rule on the sphere: Gauss-Legendre in the polar angle, trapezoid in the azimuth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct QuadratureSpec {
    pub n_radial: usize,
    pub n_azimuthal: usize,
    /// Number of radial resolutions evaluated, each doubling the previous one.
    pub refinement_levels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_radial: 128,
            n_azimuthal: 256,
            refinement_levels: 2,
        }
    }
}

impl QuadratureSpec {
    pub fn new(n_radial: usize, n_azimuthal: usize, refinement_levels: usize) -> Result<Self> {
        let q = Self {
            n_radial,
            n_azimuthal,
            refinement_levels,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_radial < 16 {
            return Err(Error::InvalidQuadrature(format!("n_radial = {} < 16", self.n_radial)));
        }
        if self.n_azimuthal < 32 {
            return Err(Error::InvalidQuadrature(format!("n_azimuthal = {} < 32", self.n_azimuthal)));
        }
        if self.refinement_levels == 0 || self.refinement_levels > 6 {
            return Err(Error::InvalidQuadrature(format!(
                "refinement_levels = {} outside 1..=6",
                self.refinement_levels
            )));
        }
        Ok(())
    }
}

/// Value at the finest level plus the comparison with the level below it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Value one refinement level down, if more than one level was run.
    pub coarse: Option<f64>,
}

impl QuadratureResult {
    /// |fine - coarse| / max(|fine|, |coarse|, 1); zero with a single level.
    pub fn relative_difference(&self) -> f64 {
        match self.coarse {
            Some(coarse) => (self.value - coarse).abs() / self.value.abs().max(coarse.abs()).max(1.0),
            None => 0.0,
        }
    }

    pub fn converged(&self) -> bool {
        self.relative_difference() <= QUADRATURE_CONVERGENCE
    }

    pub fn check(self) -> Result<f64> {
        if self.converged() {
            Ok(self.value)
        } else {
            Err(Error::NotConverged {
                coarse: self.coarse.unwrap_or(f64::NAN),
                fine: self.value,
                relative: self.relative_difference(),
            })
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral over the plane dxi1 dxi2 of several integrands at once.
///
/// The plane is mapped to the sphere by xi = tan(theta/2) e^(i phi). Node contributions are
/// collected in a fixed order and reduced pairwise, so results do not depend on the thread count.
pub fn sphere_integral_multi<const M: usize, F>(integrand: F, q: &QuadratureSpec) -> Result<[QuadratureResult; M]>
where
    F: Fn(SpherePoint) -> [f64; M] + Sync,
{
    q.validate()?;
    let levels: Vec<[f64; M]> = (0..q.refinement_levels)
        .map(|level| integrate_level(&integrand, q.n_radial << level, q.n_azimuthal))
        .collect();
    let fine = levels[levels.len() - 1];
    let coarse = (levels.len() >= 2).then(|| levels[levels.len() - 2]);
    Ok(std::array::from_fn(|m| QuadratureResult {
        value: fine[m],
        coarse: coarse.map(|c| c[m]),
    }))
}

/// Integral of a scalar field over the plane; fails if the two finest levels disagree.
pub fn sphere_integral<F>(integrand: F, q: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(SpherePoint) -> f64 + Sync,
{
    let [r] = sphere_integral_multi(|pt| [integrand(pt)], q)?;
    r.check()?;
    Ok(r)
}

fn integrate_level<const M: usize, F>(integrand: &F, n_radial: usize, n_azimuthal: usize) -> [f64; M]
where
    F: Fn(SpherePoint) -> [f64; M] + Sync,
{
    let (nodes, weights) = gauss_legendre(n_radial);
    let dphi = 2.0 * PI / n_azimuthal as f64;
    let rows: Vec<Vec<[f64; M]>> = (0..n_radial)
        .into_par_iter()
        .map(|i| {
            let theta = PI / 2.0 * (nodes[i] + 1.0);
            let r = (theta / 2.0).tan();
            // d theta = pi/2 dx, dr = (1 + r^2)/2 d theta, area r dr dphi
            let jac = weights[i] * PI / 2.0 * r * (1.0 + r * r) / 2.0 * dphi;
            (0..n_azimuthal)
                .map(|j| {
                    let values = integrand(SpherePoint::from_polar(r, j as f64 * dphi));
                    values.map(|v| v * jac)
                })
                .collect()
        })
        .collect();
    std::array::from_fn(|m| {
        let flat: Vec<f64> = rows.iter().flatten().map(|v| v[m]).collect();
        pairwise(&flat)
    })
}

/// A polar sampling grid that keeps clear of the origin.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_phi: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_min: 0.1,
            r_max: 10.0,
            n_r: 10,
            n_phi: 10,
        }
    }
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, n_r: usize, n_phi: usize) -> Result<Self> {
        let g = Self { r_min, r_max, n_r, n_phi };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min.is_finite() && self.r_max.is_finite()) {
            return Err(Error::InvalidGrid("radii must be finite".into()));
        }
        if self.r_min < EXCLUDED_RADIUS {
            return Err(Error::InvalidGrid(format!("r_min = {} below {EXCLUDED_RADIUS}", self.r_min)));
        }
        if self.r_max < self.r_min {
            return Err(Error::InvalidGrid(format!("r_max = {} below r_min = {}", self.r_max, self.r_min)));
        }
        if self.n_r == 0 || self.n_phi == 0 {
            return Err(Error::InvalidGrid("node counts must be positive".into()));
        }
        Ok(())
    }

    /// Nodes in row-major order: radius outer, angle inner. Radii are evenly spaced and include both ends.
    pub fn nodes(&self) -> Vec<SpherePoint> {
        let dr = if self.n_r > 1 {
            (self.r_max - self.r_min) / (self.n_r - 1) as f64
        } else {
            0.0
        };
        let dphi = 2.0 * PI / self.n_phi as f64;
        (0..self.n_r)
            .flat_map(|i| (0..self.n_phi).map(move |j| SpherePoint::from_polar(self.r_min + i as f64 * dr, j as f64 * dphi)))
            .collect()
    }
}

/// Values that finite differences can act on.
pub trait FieldValue: Clone {
    type Complex;
    /// sum of c_i x_i; `terms` is never empty.
    fn lin_comb(terms: &[(f64, &Self)]) -> Self;
    /// (d1 - i d2)/2, or (d1 + i d2)/2 when `conj`.
    fn wirtinger(d1: Self, d2: Self, conj: bool) -> Self::Complex;
    fn complexify(self) -> Self::Complex;
}

impl FieldValue for f64 {
    type Complex = Complex64;
    fn lin_comb(terms: &[(f64, &Self)]) -> Self {
        terms.iter().map(|(a, x)| a * *x).sum()
    }
    fn wirtinger(d1: Self, d2: Self, conj: bool) -> Complex64 {
        Complex64::new(d1, if conj { d2 } else { -d2 }) * 0.5
    }
    fn complexify(self) -> Complex64 {
        c(self)
    }
}

impl FieldValue for Complex64 {
    type Complex = Complex64;
    fn lin_comb(terms: &[(f64, &Self)]) -> Self {
        terms.iter().map(|(a, x)| *x * *a).sum()
    }
    fn wirtinger(d1: Self, d2: Self, conj: bool) -> Complex64 {
        let j = if conj { I } else { -I };
        (d1 + j * d2) * 0.5
    }
    fn complexify(self) -> Complex64 {
        self
    }
}

impl FieldValue for CMatrix {
    type Complex = CMatrix;
    fn lin_comb(terms: &[(f64, &Self)]) -> Self {
        let mut out = CMatrix::zeros(terms[0].1.nrows(), terms[0].1.ncols());
        for (a, x) in terms {
            out += *x * c(*a);
        }
        out
    }
    fn wirtinger(d1: Self, d2: Self, conj: bool) -> CMatrix {
        let j = if conj { I } else { -I };
        (d1 + d2 * j) * c(0.5)
    }
    fn complexify(self) -> CMatrix {
        self
    }
}

impl FieldValue for CVector {
    type Complex = CVector;
    fn lin_comb(terms: &[(f64, &Self)]) -> Self {
        let mut out = CVector::zeros(terms[0].1.len());
        for (a, x) in terms {
            out += *x * c(*a);
        }
        out
    }
    fn wirtinger(d1: Self, d2: Self, conj: bool) -> CVector {
        let j = if conj { I } else { -I };
        (d1 + d2 * j) * c(0.5)
    }
    fn complexify(self) -> CVector {
        self
    }
}

/// Which Wirtinger derivative to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    /// d = (d1 - i d2)/2
    D,
    /// dbar = (d1 + i d2)/2
    DBar,
    /// d dbar = Laplacian / 4
    DDBar,
}

/// Fourth-order central stencil in the real coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    step: f64,
    excluded: f64,
}

impl Stencil {
    /// Base step h; the effective step at xi is h max(1, |xi|). Stencils may not reach into
    /// |xi| < 1e-3 unless `unrestricted` is called.
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidStep(step));
        }
        Ok(Self {
            step,
            excluded: EXCLUDED_RADIUS,
        })
    }

    /// For fields that are smooth through the origin.
    pub fn unrestricted(self) -> Self {
        Self { excluded: 0.0, ..self }
    }

    pub fn step_at(&self, point: SpherePoint) -> f64 {
        self.step * point.radius().max(1.0)
    }

    fn check(&self, point: SpherePoint, h: f64) -> Result<()> {
        if self.excluded > 0.0 && point.radius() - 2.0 * h < self.excluded {
            return Err(Error::StencilOutOfDomain {
                radius: point.radius(),
                excluded: self.excluded,
            });
        }
        Ok(())
    }

    fn axis<T, F>(&self, field: &F, point: SpherePoint, h: f64, axis: usize) -> Result<[T; 4]>
    where
        F: Fn(SpherePoint) -> Result<T>,
    {
        let at = |t: f64| {
            if axis == 0 {
                point.offset(t * h, 0.0)
            } else {
                point.offset(0.0, t * h)
            }
        };
        Ok([field(at(2.0))?, field(at(1.0))?, field(at(-1.0))?, field(at(-2.0))?])
    }

    /// d or dbar of the field.
    pub fn first<T, F>(&self, field: F, point: SpherePoint, conj: bool) -> Result<T::Complex>
    where
        T: FieldValue,
        F: Fn(SpherePoint) -> Result<T>,
    {
        let h = self.step_at(point);
        self.check(point, h)?;
        let w = 1.0 / (12.0 * h);
        let diff = |v: &[T; 4]| T::lin_comb(&[(-w, &v[0]), (8.0 * w, &v[1]), (-8.0 * w, &v[2]), (w, &v[3])]);
        let d1 = diff(&self.axis(&field, point, h, 0)?);
        let d2 = diff(&self.axis(&field, point, h, 1)?);
        Ok(T::wirtinger(d1, d2, conj))
    }

    /// d dbar of the field, as a quarter of the five-point-per-axis Laplacian.
    pub fn mixed<T, F>(&self, field: F, point: SpherePoint) -> Result<T>
    where
        T: FieldValue,
        F: Fn(SpherePoint) -> Result<T>,
    {
        let h = self.step_at(point);
        self.check(point, h)?;
        let w = 1.0 / (48.0 * h * h);
        let centre = field(point)?;
        let a = self.axis(&field, point, h, 0)?;
        let b = self.axis(&field, point, h, 1)?;
        Ok(T::lin_comb(&[
            (-60.0 * w, &centre),
            (-w, &a[0]),
            (16.0 * w, &a[1]),
            (16.0 * w, &a[2]),
            (-w, &a[3]),
            (-w, &b[0]),
            (16.0 * w, &b[1]),
            (16.0 * w, &b[2]),
            (-w, &b[3]),
        ]))
    }

    pub fn apply<T, F>(&self, field: F, point: SpherePoint, order: DerivativeOrder) -> Result<T::Complex>
    where
        T: FieldValue,
        F: Fn(SpherePoint) -> Result<T>,
    {
        match order {
            DerivativeOrder::D => self.first(field, point, false),
            DerivativeOrder::DBar => self.first(field, point, true),
            DerivativeOrder::DDBar => self.mixed(field, point).map(T::complexify),
        }
    }
}

/// Wirtinger derivative by fourth-order central differences with base step `h`.
pub fn complex_derivative<T, F>(field: F, point: SpherePoint, order: DerivativeOrder, h: f64) -> Result<T::Complex>
where
    T: FieldValue,
    F: Fn(SpherePoint) -> Result<T>,
{
    Stencil::new(h)?.apply(field, point, order)
}
