// Lax pair U, V of the sigma model and the explicit wavefunction phi_k.

use num_complex::Complex64;
use veronese::lsp::{lsp_residuals, wavefunction_inverse_defect, zero_curvature_residual, SpectralParam};
use veronese::{ModelSpec, SpherePoint};

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(3)?;
    let point = SpherePoint::new(Complex64::new(-0.4, 1.3));
    let k = 1;

    for lambda in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 5.0), Complex64::new(-0.3, 0.4)] {
        let r = zero_curvature_residual(spec, k, point, &SpectralParam::new(lambda)?, 1e-4)?;
        println!("lambda = {lambda}: zero curvature residual {r:.1e}");
    }
    // The poles of U and V are rejected up front.
    assert!(SpectralParam::new(Complex64::new(1.0, 0.0)).is_err());

    for t in [0.5, 1.0, 2.0, 10.0] {
        let inv = wavefunction_inverse_defect(spec, k, point, t)?;
        let (d, dbar) = lsp_residuals(spec, k, point, t, 1e-4)?;
        println!("t = {t:>4}: phi phi^-1 - 1 = {inv:.1e}, d phi - U phi = {d:.1e}, dbar phi - V phi = {dbar:.1e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
