// Action, Willmore functional, topological charge and Euler characteristic: closed values
// against sphere quadrature.

use veronese::geometry::{global_invariants_detailed, ClosedInvariants};
use veronese::quad::QuadratureSpec;
use veronese::ModelSpec;

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(2)?;
    let q = QuadratureSpec::new(64, 32, 2)?;
    for k in 0..=spec.n() {
        let closed = ClosedInvariants::new(spec, k)?;
        let got = global_invariants_detailed(spec, k, &q)?;
        let v = got.values();
        println!("k = {k}");
        println!("  action     {:>12.8} closed {:>12.8}", v.action, closed.action);
        println!("  willmore   {:>12.8} closed {:>12.8}", v.willmore, closed.willmore);
        println!("  top_charge {:>12.8} closed {:>12.8}", v.top_charge, closed.top_charge);
        println!("  euler_char {:>12.8} closed {:>12.8}", v.euler_char, closed.euler_char);
        println!(
            "  area       {:>12.8} (refinement change {:.1e})",
            got.area.value,
            got.area.relative_difference()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
