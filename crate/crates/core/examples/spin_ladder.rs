// The spin-s triple attached to a point, and the chain f_0 -> f_N it generates.

use veronese::sigma::veronese_fk_regular;
use veronese::spin::{spin_lower_f, spin_raise_f, spin_triple};
use veronese::{ModelSpec, SpherePoint};

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(3)?;
    let point = SpherePoint::from_polar(1.7, 0.4);
    let t = spin_triple(spec, point);
    let spectrum: Vec<String> = t.sz_spectrum().iter().map(|v| format!("{v:.3}")).collect();
    println!("s = {}, commutator defect {:.1e}", spec.s(), t.commutator_defect());
    println!("S_z spectrum: {}", spectrum.join(" "));

    for k in 0..spec.n() {
        let up = spin_raise_f(spec, k, point)?;
        let err = (&up - veronese_fk_regular(spec, k + 1, point)?).norm() / up.norm();
        println!("f_{} from S+ f_{k}: relative error {err:.1e}", k + 1);
    }
    let down = spin_lower_f(spec, 2, point)?;
    let err = (&down - veronese_fk_regular(spec, 1, point)?).norm() / down.norm();
    println!("f_1 from S- f_2: relative error {err:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
