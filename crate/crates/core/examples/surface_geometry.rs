// The surface X_k in su(N+1): radius, metric, curvatures and the algebraic relations between
// the X_k.

use veronese::geometry::{
    gaussian_curvature, gaussian_curvature_numeric, immersion, inner, mean_curvature, metric, radius_sq_alternative, radius_sq_direct,
    structure_checks,
};
use veronese::tolerance::QUADRATURE_FD_STEP;
use veronese::{ModelSpec, SpherePoint};

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(4)?;
    let point = SpherePoint::from_real(0.9, 0.35);
    println!(
        "{:>2} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "k", "(X,X)", "g12", "K", "K (fd)", "|H|"
    );
    for k in 0..=spec.n() {
        let x = immersion(spec, k, point)?.into_matrix();
        let g = metric(spec, k, point)?;
        let h = mean_curvature(spec, k, point)?;
        println!(
            "{k:>2} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            inner(&x, &x)?,
            g.g12,
            gaussian_curvature(spec, k)?,
            gaussian_curvature_numeric(spec, k, point, QUADRATURE_FD_STEP)?,
            h.matrix().norm()
        );
    }
    println!(
        "radius at k = 0: {:.6} (eigenvalues) vs {:.6} (alternative closed form)",
        radius_sq_direct(spec, 0),
        radius_sq_alternative(spec, 0)
    );

    let report = structure_checks(spec, point);
    println!(
        "[X_j, X_k] {:.1e}, alternating sum {:.1e}",
        report.max_commutator, report.alternating_sum
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
