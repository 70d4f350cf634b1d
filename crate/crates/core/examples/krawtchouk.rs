// Krawtchouk polynomials K_j(k; p, N) and the identities they satisfy.

use veronese::kraw::{forward_shift_residual, krawtchouk, orthogonality_defect, KrawParams, Orthogonality};
use veronese::SpherePoint;

pub fn run() -> veronese::Result<()> {
    let n = 4;
    let point = SpherePoint::from_real(0.8, -0.3);
    let p = veronese::kraw::p_of(point);
    println!("N = {n}, p = {p:.6}");
    for j in 0..=n {
        let row: Vec<String> = (0..=n)
            .map(|k| KrawParams::new(j, k, n, p).map(|q| format!("{:>10.5}", krawtchouk(&q))))
            .collect::<Result<_, _>>()?;
        println!("K_{j}: {}", row.join(" "));
    }

    let mut worst = 0.0f64;
    for k in 0..=n {
        for l in 0..=n {
            if let Some(d) = orthogonality_defect(Orthogonality::Ort1, k, l, n, point, false)? {
                worst = worst.max(d);
            }
            if l < n {
                worst = worst.max(forward_shift_residual(k, l, n, p)?.relative());
            }
        }
    }
    println!("worst orthogonality / forward shift residual: {worst:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> veronese::Result<()> {
    run()
}
