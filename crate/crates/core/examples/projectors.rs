// The Veronese sequence P_0, ..., P_N: projector axioms, completeness and the raising step.

use veronese::sigma::{completeness_defects, el_residual, projector_closed, projector_regular, raise_projector, ProjectorJet};
use veronese::{ModelSpec, SpherePoint};

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(4)?;
    let point = SpherePoint::new(num_complex::Complex64::new(0.6, 1.1));

    let ps: Vec<_> = (0..=spec.n())
        .map(|k| projector_regular(spec, k, point).map(|p| p.into_matrix()))
        .collect::<Result<_, _>>()?;
    let (orth, complete) = completeness_defects(&ps);
    println!("P_j P_k = 0 defect {orth:.2e}, sum P_k = 1 defect {complete:.2e}");

    for k in 0..=spec.n() {
        let closed = projector_closed(spec, k, point)?;
        let el = el_residual(spec, k, point, 1e-4)?;
        println!(
            "k = {k}: trace {:.12}, axioms {:.1e}, EL residual {el:.1e}",
            closed.matrix().trace().re,
            closed.defects().max()
        );
    }

    // P_{k+1} from P_k alone.
    let jet = ProjectorJet::veronese(spec, 1, point)?;
    let up = raise_projector(&jet)?;
    let diff = (up.matrix() - projector_regular(spec, 2, point)?.matrix()).norm();
    println!("raise(P_1) vs P_2: {diff:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
