use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::{c, CMatrix, ModelSpec, I};
use crate::quad::{GridSpec, Stencil};
use crate::sigma::Frame;
use crate::tolerance::QUADRATURE_FD_STEP;

use super::{gaussian_curvature_numeric, immersion_in_frame, mean_curvature_from_products, metric};

/// Orthonormal basis of su(dim) under (A, B) = -tr(AB)/2.
///
/// For each pair a < b in lexicographic order: E_ab - E_ba, then i(E_ab + E_ba). After all pairs,
/// the diagonal elements i sqrt(2/(l(l+1))) diag(1, .., 1, -l, 0, ..) for l = 1..dim-1.
pub fn su_basis(dim: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(dim * dim - 1);
    for a in 0..dim {
        for b in a + 1..dim {
            let mut real = CMatrix::zeros(dim, dim);
            real[(a, b)] = c(1.0);
            real[(b, a)] = c(-1.0);
            basis.push(real);
            let mut imag = CMatrix::zeros(dim, dim);
            imag[(a, b)] = I;
            imag[(b, a)] = I;
            basis.push(imag);
        }
    }
    for l in 1..dim {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut h = CMatrix::zeros(dim, dim);
        for i in 0..l {
            h[(i, i)] = I * norm;
        }
        h[(l, l)] = I * (-(l as f64) * norm);
        basis.push(h);
    }
    basis
}

/// Real coordinates (X, B_a) in the basis of `su_basis`.
pub fn coordinates(x: &CMatrix, basis: &[CMatrix]) -> Vec<f64> {
    basis.iter().map(|b| -0.5 * (x * b).trace().re).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshNode {
    pub xi1: f64,
    pub xi2: f64,
    pub coords: Vec<f64>,
    pub g12: f64,
    #[serde(rename = "gauss_K")]
    pub gauss_k: f64,
    #[serde(rename = "mean_H_norm")]
    pub mean_h_norm: f64,
}

/// X_k and its scalar fields at every grid node, in the grid's row-major order.
///
/// The Gaussian curvature is the finite-difference value; the mean-curvature norm is the
/// Frobenius norm of H_k from the derivative products.
pub fn mesh_sample(spec: ModelSpec, k: usize, grid: &GridSpec) -> Result<Vec<MeshNode>> {
    spec.check_index(k)?;
    grid.validate()?;
    Stencil::new(QUADRATURE_FD_STEP)?;
    let basis = su_basis(spec.dim());
    grid.nodes()
        .into_par_iter()
        .map(|point| {
            let frame = Frame::new(spec, point);
            let x = immersion_in_frame(&frame, k);
            Ok(MeshNode {
                xi1: point.xi1(),
                xi2: point.xi2(),
                coords: coordinates(x.matrix(), &basis),
                g12: metric(spec, k, point)?.g12,
                gauss_k: gaussian_curvature_numeric(spec, k, point, QUADRATURE_FD_STEP)?,
                mean_h_norm: mean_curvature_from_products(spec, k, point)?.matrix().norm(),
            })
        })
        .collect()
}
