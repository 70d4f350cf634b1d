use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{
    gaussian_curvature, gaussian_curvature_numeric, global_invariants_detailed, immersion, inner, inner_complex, mean_curvature,
    mean_curvature_decomposition, mean_curvature_from_products, mesh_sample, null_metric_defect, radius_sq_direct, structure_checks,
    tangent_vectors, ClosedInvariants, MeshNode,
};
use crate::kraw::{
    difference_residual, forward_shift_residual, krawtchouk, krawtchouk_dxi, krawtchouk_dxibar, krawtchouk_with_magnitude,
    orthogonality_defect, p_of, recurrence_d4_residual, KrawParams, Orthogonality,
};
use crate::lsp::{lsp_residuals, wavefunction_inverse_defect, zero_curvature_residual, SpectralParam};
use crate::model::{c, HermProjector, ModelSpec, SpherePoint, I};
use crate::quad::{GridSpec, QuadratureResult, QuadratureSpec, Stencil};
use crate::sigma::{
    completeness_defects, el_residual, el_residual_field, lower_projector, perturbed_projector, projector_closed,
    projector_closed_conditioning, projector_regular, raise_projector, veronese_fk_regular, ProjectorJet,
};
use crate::spin::{spin_lower_f, spin_projector_step, spin_raise_f, spin_triple, Direction};
use crate::tolerance::{QUADRATURE_FD_STEP, TOL_CLOSED, TOL_EXACT, TOL_FD};

use super::config::{ConfigError, RunConfig};
use super::output::{csv_float, render, Cell, Row};
use super::Failure;

/// Largest relative disagreement allowed between closed and integrated invariants.
pub const INTEGRAL_TOLERANCE: f64 = 1e-5;

/// Rendered output and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub ok: bool,
    /// Lines for standard error.
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    #[serde(rename = "N")]
    n: usize,
    k: &'a [usize],
    seed: u64,
    sample_points: usize,
    quadrature: QuadratureSpec,
    fd_step: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<GridSpec>,
}

impl<'a> Meta<'a> {
    fn new(command: &'a str, cfg: &'a RunConfig, k: &'a [usize]) -> Self {
        Meta {
            command,
            n: cfg.spec.n(),
            k,
            seed: cfg.seed,
            sample_points: cfg.points.len(),
            quadrature: cfg.quadrature,
            fd_step: cfg.fd_step,
            perturb: cfg.perturb,
            grid: None,
        }
    }
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

// ---- verify ----

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub check: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Row for CheckRow {
    fn cells(&self) -> Vec<String> {
        vec![
            self.check.into(),
            csv_float(self.max_residual),
            csv_float(self.tolerance),
            self.pass.to_string(),
        ]
    }
}

type CheckFn = fn(&RunConfig, SpherePoint) -> Result<f64>;

struct CheckDef {
    name: &'static str,
    tolerance: f64,
    /// Second differences of P carry rounding of order N eps |d dbar P| / h^2, and |d dbar P|
    /// itself grows like N, so above N = 8 the tolerance grows like N^2.
    grows_with_n: bool,
    run: CheckFn,
}

impl CheckDef {
    fn tolerance(&self, spec: ModelSpec) -> f64 {
        if self.grows_with_n {
            self.tolerance * (spec.n() as f64 / 8.0).max(1.0).powi(2)
        } else {
            self.tolerance
        }
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(values: I) -> Result<f64> {
    let mut m = 0.0f64;
    for v in values {
        let v = v?;
        m = if v.is_nan() { f64::INFINITY } else { m.max(v) };
    }
    Ok(m)
}

fn all_k(cfg: &RunConfig) -> std::ops::RangeInclusive<usize> {
    0..=cfg.spec.n()
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn kraw_orthogonality(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    let mut m = 0.0f64;
    for kind in Orthogonality::ALL {
        for k in 0..=n {
            for l in 0..=n {
                for dual in [false, true] {
                    if let Some(d) = orthogonality_defect(kind, k, l, n, pt, dual)? {
                        m = m.max(d);
                    }
                }
            }
        }
    }
    Ok(m)
}

fn kraw_forward_shift(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    let p = p_of(pt);
    max_over((0..=n).flat_map(|j| (0..n).map(move |k| forward_shift_residual(j, k, n, p).map(|r| r.relative()))))
}

fn kraw_difference(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    let p = p_of(pt);
    max_over((0..=n).flat_map(|j| (0..=n).map(move |k| difference_residual(j, k, n, p).map(|r| r.relative()))))
}

fn kraw_recurrence(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    max_over((0..=n).flat_map(|j| (0..=n).map(move |k| recurrence_d4_residual(j, k, n, pt).map(|r| r.relative()))))
}

fn kraw_self_duality(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    let value = |j, k| KrawParams::at_point(j, k, n, pt).map(|p| krawtchouk(&p));
    max_over((0..=n).flat_map(|j| (0..=n).map(move |k| Ok(relative(value(j, k)?, value(k, j)?)))))
}

fn kraw_derivative(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    let stencil = Stencil::new(cfg.fd_step)?;
    let magnitude = |j, k| KrawParams::at_point(j, k, n, pt).map(|p| krawtchouk_with_magnitude(&p).1);
    max_over((0..=n).flat_map(|j| {
        (1..=n).map(move |k| {
            let params = KrawParams::at_point(j, k, n, pt)?;
            let field = |q| KrawParams::at_point(j, k, n, q).map(|p| krawtchouk(&p));
            let d = krawtchouk_dxi(&params, pt)?;
            let dbar = krawtchouk_dxibar(&params, pt)?;
            let fd = stencil.first(field, pt, false)?;
            let fdbar = stencil.first(field, pt, true)?;
            // Size of the terms in -k (K_j(k) - K_j(k-1)) / (xi (1+rho)).
            let scale = k as f64 * (magnitude(j, k)? + magnitude(j, k - 1)?) / (pt.radius() * (1.0 + pt.rho()));
            Ok((d - fd).norm().max((dbar - fdbar).norm()) / scale)
        })
    }))
}

fn sigma_axioms(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(all_k(cfg).map(|k| projector_regular(cfg.spec, k, pt).map(|p| p.defects().max())))
}

fn sigma_completeness(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let ps = all_k(cfg)
        .map(|k| projector_regular(cfg.spec, k, pt).map(HermProjector::into_matrix))
        .collect::<Result<Vec<_>>>()?;
    let (orth, complete) = completeness_defects(&ps);
    Ok(orth.max(complete))
}

fn sigma_closed_forms(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(cfg.k_list.iter().map(|&k| {
        let closed = projector_closed(cfg.spec, k, pt)?;
        let regular = projector_regular(cfg.spec, k, pt)?;
        // The literal closed form cancels like the Krawtchouk sums it is built from.
        Ok((closed.matrix() - regular.matrix()).norm() / projector_closed_conditioning(cfg.spec, k, pt)?)
    }))
}

fn sigma_euler_lagrange(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let h = cfg.fd_step;
    max_over(cfg.k_list.iter().map(|&k| match cfg.perturb {
        Some(eps) => el_residual_field(|q| perturbed_projector(cfg.spec, k, q, eps).map(HermProjector::into_matrix), pt, h),
        None => el_residual(cfg.spec, k, pt, h),
    }))
}

fn sigma_ladder(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let n = cfg.spec.n();
    max_over(cfg.k_list.iter().map(|&k| {
        let jet = ProjectorJet::veronese(cfg.spec, k, pt)?;
        let scale = projector_closed_conditioning(cfg.spec, k, pt)?;
        let mut m = 0.0f64;
        if k < n {
            let up = raise_projector(&jet)?;
            m = m.max((up.matrix() - projector_regular(cfg.spec, k + 1, pt)?.matrix()).norm());
        }
        if k > 0 {
            let down = lower_projector(&jet)?;
            m = m.max((down.matrix() - projector_regular(cfg.spec, k - 1, pt)?.matrix()).norm());
        }
        Ok(m / scale)
    }))
}

fn sigma_conservation(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(
        cfg.k_list
            .iter()
            .map(|&k| crate::sigma::conservation_residual(cfg.spec, k, pt, cfg.fd_step)),
    )
}

fn spin_commutators(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    Ok(spin_triple(cfg.spec, pt).commutator_defect())
}

fn spin_ladder(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let spec = cfg.spec;
    let t = spin_triple(spec, pt);
    max_over(cfg.k_list.iter().map(|&k| {
        let f = veronese_fk_regular(spec, k, pt)?;
        let mut m = (&t.s_z * &f - &f * c(k as f64 - spec.s())).norm() / f.norm();
        if k < spec.n() {
            let want = veronese_fk_regular(spec, k + 1, pt)?;
            m = m.max((spin_raise_f(spec, k, pt)? - &want).norm() / want.norm());
        } else {
            m = m.max((&t.s_plus * &f).norm() / f.norm());
        }
        if k > 0 {
            let want = veronese_fk_regular(spec, k - 1, pt)?;
            m = m.max((spin_lower_f(spec, k, pt)? - &want).norm() / want.norm());
        }
        Ok(m)
    }))
}

fn spin_chain(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let spec = cfg.spec;
    let n = spec.n();
    let mut m = 0.0f64;
    let mut up = projector_regular(spec, 0, pt)?;
    let mut down = projector_regular(spec, n, pt)?;
    for step in 1..=n {
        up = spin_projector_step(spec, &up, pt, Direction::Up)?;
        down = spin_projector_step(spec, &down, pt, Direction::Down)?;
        m = m.max((up.matrix() - projector_regular(spec, step, pt)?.matrix()).norm());
        m = m.max((down.matrix() - projector_regular(spec, n - step, pt)?.matrix()).norm());
    }
    Ok(m)
}

fn geometry_structure(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    Ok(structure_checks(cfg.spec, pt).max())
}

fn geometry_radius(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(cfg.k_list.iter().map(|&k| {
        let x = immersion(cfg.spec, k, pt)?;
        Ok((inner(x.matrix(), x.matrix())? - radius_sq_direct(cfg.spec, k)).abs())
    }))
}

fn geometry_gaussian(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(cfg.k_list.iter().map(|&k| {
        let closed = gaussian_curvature(cfg.spec, k)?;
        Ok((gaussian_curvature_numeric(cfg.spec, k, pt, QUADRATURE_FD_STEP)? - closed).abs() / closed)
    }))
}

fn geometry_mean_curvature(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(cfg.k_list.iter().map(|&k| {
        let products = mean_curvature_from_products(cfg.spec, k, pt)?;
        let closed = mean_curvature(cfg.spec, k, pt)?;
        let decomposed = mean_curvature_decomposition(cfg.spec, k, pt)?;
        let (dx, dbarx) = tangent_vectors(cfg.spec, k, pt)?;
        let normal = inner_complex(closed.matrix(), &dx)?
            .norm()
            .max(inner_complex(closed.matrix(), &dbarx)?.norm());
        Ok((closed.matrix() - products.matrix())
            .norm()
            .max((decomposed.matrix() - products.matrix()).norm())
            .max(normal)
            .max(closed.trace_defect()))
    }))
}

fn geometry_null_metric(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(cfg.k_list.iter().map(|&k| null_metric_defect(cfg.spec, k, pt)))
}

fn lsp_zero_curvature(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    let sweep = [c(2.0), I * 5.0, Complex64::new(-0.3, 0.4)];
    max_over(cfg.k_list.iter().flat_map(|&k| {
        sweep
            .iter()
            .map(move |&l| zero_curvature_residual(cfg.spec, k, pt, &SpectralParam::new(l)?, cfg.fd_step))
    }))
}

fn lsp_inverse(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(
        cfg.k_list
            .iter()
            .flat_map(|&k| [0.5, 1.0, 2.0, 10.0].map(|t| wavefunction_inverse_defect(cfg.spec, k, pt, t))),
    )
}

fn lsp_equations(cfg: &RunConfig, pt: SpherePoint) -> Result<f64> {
    max_over(
        cfg.k_list
            .iter()
            .flat_map(|&k| [0.5, 2.0].map(|t| lsp_residuals(cfg.spec, k, pt, t, cfg.fd_step).map(|(a, b)| a.max(b)))),
    )
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "kraw.orthogonality",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: kraw_orthogonality,
    },
    CheckDef {
        name: "kraw.forward_shift",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: kraw_forward_shift,
    },
    CheckDef {
        name: "kraw.difference_equation",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: kraw_difference,
    },
    CheckDef {
        name: "kraw.recurrence",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: kraw_recurrence,
    },
    CheckDef {
        name: "kraw.self_duality",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: kraw_self_duality,
    },
    CheckDef {
        name: "kraw.derivative",
        tolerance: TOL_FD,
        grows_with_n: false,
        run: kraw_derivative,
    },
    CheckDef {
        name: "sigma.projector_axioms",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: sigma_axioms,
    },
    CheckDef {
        name: "sigma.completeness",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: sigma_completeness,
    },
    CheckDef {
        name: "sigma.closed_vs_regular",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: sigma_closed_forms,
    },
    CheckDef {
        name: "sigma.euler_lagrange",
        tolerance: TOL_FD,
        grows_with_n: true,
        run: sigma_euler_lagrange,
    },
    CheckDef {
        name: "sigma.ladder",
        tolerance: 1e-9,
        grows_with_n: false,
        run: sigma_ladder,
    },
    CheckDef {
        name: "sigma.conservation",
        tolerance: 1e-5,
        grows_with_n: false,
        run: sigma_conservation,
    },
    CheckDef {
        name: "spin.commutators",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: spin_commutators,
    },
    CheckDef {
        name: "spin.ladder",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: spin_ladder,
    },
    CheckDef {
        name: "spin.projector_chain",
        tolerance: 1e-9,
        grows_with_n: false,
        run: spin_chain,
    },
    CheckDef {
        name: "geometry.structure",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: geometry_structure,
    },
    CheckDef {
        name: "geometry.radius",
        tolerance: TOL_EXACT,
        grows_with_n: false,
        run: geometry_radius,
    },
    CheckDef {
        name: "geometry.gaussian_curvature",
        tolerance: 1e-5,
        grows_with_n: false,
        run: geometry_gaussian,
    },
    CheckDef {
        name: "geometry.mean_curvature",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: geometry_mean_curvature,
    },
    CheckDef {
        name: "geometry.null_metric",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: geometry_null_metric,
    },
    CheckDef {
        name: "lsp.zero_curvature",
        tolerance: 1e-5,
        grows_with_n: false,
        run: lsp_zero_curvature,
    },
    CheckDef {
        name: "lsp.wavefunction_inverse",
        tolerance: TOL_CLOSED,
        grows_with_n: false,
        run: lsp_inverse,
    },
    CheckDef {
        name: "lsp.equations",
        tolerance: 1e-5,
        grows_with_n: false,
        run: lsp_equations,
    },
];

/// Every identity suite at every sample point; one row per check with its worst residual.
pub fn verify_rows(cfg: &RunConfig) -> (Vec<CheckRow>, Vec<String>) {
    let per_point: Vec<Vec<std::result::Result<f64, String>>> = cfg
        .points
        .par_iter()
        .map(|&pt| {
            CHECKS
                .iter()
                .map(|def| (def.run)(cfg, pt).map_err(|e| format!("{} at xi = {}: {e}", def.name, pt.xi_plus())))
                .collect()
        })
        .collect();
    let mut notes = Vec::new();
    let rows = CHECKS
        .iter()
        .enumerate()
        .map(|(i, def)| {
            let mut worst = 0.0f64;
            for point in &per_point {
                match &point[i] {
                    Ok(v) if v.is_nan() => worst = f64::INFINITY,
                    Ok(v) => worst = worst.max(*v),
                    Err(msg) => {
                        worst = f64::INFINITY;
                        notes.push(msg.clone());
                    }
                }
            }
            let tolerance = def.tolerance(cfg.spec);
            CheckRow {
                check: def.name,
                max_residual: worst,
                tolerance,
                pass: worst <= tolerance,
            }
        })
        .collect();
    (rows, notes)
}

pub fn cmd_verify(cfg: &RunConfig) -> Report {
    let (rows, mut notes) = verify_rows(cfg);
    let ok = rows.iter().all(|r| r.pass);
    for r in rows.iter().filter(|r| !r.pass) {
        notes.push(format!("FAIL {}: max residual {:e} > {:e}", r.check, r.max_residual, r.tolerance));
    }
    let meta = Meta::new("verify", cfg, &cfg.k_list);
    let text = render(cfg.format, &meta, &header(&["check", "max_residual", "tolerance", "pass"]), &rows);
    Report { text, ok, notes }
}

// ---- table ----

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub action_closed: f64,
    pub action_quadrature: Cell,
    #[serde(rename = "gaussian_K")]
    pub gaussian_k: f64,
    pub willmore_closed: f64,
    pub willmore_quadrature: Cell,
    #[serde(rename = "Q_closed")]
    pub q_closed: f64,
    #[serde(rename = "Q_quadrature")]
    pub q_quadrature: Cell,
    pub euler_quadrature: Cell,
    pub radius_sq_direct: f64,
}

pub const TABLE_COLUMNS: [&str; 11] = [
    "N",
    "k",
    "action_closed",
    "action_quadrature",
    "gaussian_K",
    "willmore_closed",
    "willmore_quadrature",
    "Q_closed",
    "Q_quadrature",
    "euler_quadrature",
    "radius_sq_direct",
];

impl Row for TableRow {
    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            csv_float(self.action_closed),
            self.action_quadrature.csv(),
            csv_float(self.gaussian_k),
            csv_float(self.willmore_closed),
            self.willmore_quadrature.csv(),
            csv_float(self.q_closed),
            self.q_quadrature.csv(),
            self.euler_quadrature.csv(),
            csv_float(self.radius_sq_direct),
        ]
    }
}

fn cell(r: &QuadratureResult) -> Cell {
    if r.converged() {
        Cell::Value(r.value)
    } else {
        Cell::Failed
    }
}

pub fn table_rows(cfg: &RunConfig) -> Result<Vec<TableRow>> {
    cfg.k_list
        .iter()
        .map(|&k| {
            let closed = ClosedInvariants::new(cfg.spec, k)?;
            let q = global_invariants_detailed(cfg.spec, k, &cfg.quadrature)?;
            Ok(TableRow {
                n: cfg.spec.n(),
                k,
                action_closed: closed.action,
                action_quadrature: cell(&q.action),
                gaussian_k: gaussian_curvature(cfg.spec, k)?,
                willmore_closed: closed.willmore,
                willmore_quadrature: cell(&q.willmore),
                q_closed: closed.top_charge,
                q_quadrature: cell(&q.top_charge),
                euler_quadrature: cell(&q.euler_char),
                radius_sq_direct: radius_sq_direct(cfg.spec, k),
            })
        })
        .collect()
}

pub fn cmd_table(cfg: &RunConfig) -> std::result::Result<Report, Failure> {
    let rows = table_rows(cfg)?;
    let ok = rows.iter().all(|r| {
        ![r.action_quadrature, r.willmore_quadrature, r.q_quadrature, r.euler_quadrature]
            .iter()
            .any(Cell::is_failed)
    });
    let notes = if ok {
        Vec::new()
    } else {
        vec!["quadrature did not converge; affected cells are marked FAILED".into()]
    };
    let meta = Meta::new("table", cfg, &cfg.k_list);
    Ok(Report {
        text: render(cfg.format, &meta, &header(&TABLE_COLUMNS), &rows),
        ok,
        notes,
    })
}

// ---- mesh ----

impl Row for MeshNode {
    fn cells(&self) -> Vec<String> {
        let mut cells = vec![csv_float(self.xi1), csv_float(self.xi2)];
        cells.extend(self.coords.iter().map(|v| csv_float(*v)));
        cells.extend([csv_float(self.g12), csv_float(self.gauss_k), csv_float(self.mean_h_norm)]);
        cells
    }
}

pub fn mesh_header(coords: usize) -> Vec<String> {
    let mut h = vec!["xi1".to_string(), "xi2".to_string()];
    h.extend((0..coords).map(|i| format!("coord_{i:03}")));
    h.extend(["g12", "gauss_K", "mean_H_norm"].map(String::from));
    h
}

/// The mesh takes a single k, 0 unless given.
pub fn mesh_k(cfg: &RunConfig) -> std::result::Result<usize, ConfigError> {
    match (cfg.k_explicit, cfg.k_list.as_slice()) {
        (false, _) => Ok(0),
        (true, [k]) => Ok(*k),
        (true, _) => Err(ConfigError("mesh takes a single k".into())),
    }
}

pub fn cmd_mesh(cfg: &RunConfig) -> std::result::Result<Report, Failure> {
    let k = mesh_k(cfg)?;
    let nodes = mesh_sample(cfg.spec, k, &cfg.grid)?;
    let ks = [k];
    let mut meta = Meta::new("mesh", cfg, &ks);
    meta.grid = Some(cfg.grid);
    let dim = cfg.spec.dim();
    Ok(Report {
        text: render(cfg.format, &meta, &mesh_header(dim * dim - 1), &nodes),
        ok: true,
        notes: Vec::new(),
    })
}

// ---- integrals ----

#[derive(Debug, Clone, Serialize)]
pub struct IntegralRow {
    pub k: usize,
    pub invariant: &'static str,
    pub closed: f64,
    pub computed: Cell,
    pub relative_error: Cell,
    pub refinement_difference: f64,
    pub pass: bool,
}

impl Row for IntegralRow {
    fn cells(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.invariant.into(),
            csv_float(self.closed),
            self.computed.csv(),
            self.relative_error.csv(),
            csv_float(self.refinement_difference),
            self.pass.to_string(),
        ]
    }
}

pub fn integral_rows(cfg: &RunConfig) -> Result<Vec<IntegralRow>> {
    let mut rows = Vec::new();
    for &k in &cfg.k_list {
        let closed = ClosedInvariants::new(cfg.spec, k)?;
        let q = global_invariants_detailed(cfg.spec, k, &cfg.quadrature)?;
        let pairs = [
            ("action", closed.action, q.action),
            ("willmore", closed.willmore, q.willmore),
            ("top_charge", closed.top_charge, q.top_charge),
            ("euler_char", closed.euler_char, q.euler_char),
            ("area", closed.action, q.area),
        ];
        for (invariant, closed, result) in pairs {
            let (computed, relative_error, pass) = if result.converged() {
                let rel = relative(result.value, closed);
                (Cell::Value(result.value), Cell::Value(rel), rel <= INTEGRAL_TOLERANCE)
            } else {
                (Cell::Failed, Cell::Failed, false)
            };
            rows.push(IntegralRow {
                k,
                invariant,
                closed,
                computed,
                relative_error,
                refinement_difference: result.relative_difference(),
                pass,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_integrals(cfg: &RunConfig) -> std::result::Result<Report, Failure> {
    let rows = integral_rows(cfg)?;
    let ok = rows.iter().all(|r| r.pass);
    let notes = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("FAIL k = {} {}: computed {:?}, closed {}", r.k, r.invariant, r.computed, r.closed))
        .collect();
    let meta = Meta::new("integrals", cfg, &cfg.k_list);
    let cols = header(&[
        "k",
        "invariant",
        "closed",
        "computed",
        "relative_error",
        "refinement_difference",
        "pass",
    ]);
    Ok(Report {
        text: render(cfg.format, &meta, &cols, &rows),
        ok,
        notes,
    })
}
