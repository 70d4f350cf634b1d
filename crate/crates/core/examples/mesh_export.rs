// Sample X_k on a polar grid and write it as CSV through the command-line front end.
//
// `cargo run --example mesh_export -- out.csv` writes to a file, otherwise to stdout.

use veronese::geometry::mesh_sample;
use veronese::quad::GridSpec;
use veronese::ModelSpec;

pub fn run() -> veronese::Result<()> {
    let spec = ModelSpec::new(2)?;
    let grid = GridSpec::new(0.2, 5.0, 6, 8)?;
    let nodes = mesh_sample(spec, 1, &grid)?;
    let first = &nodes[0];
    println!("{} nodes, {} coordinates each", nodes.len(), first.coords.len());
    println!(
        "first node ({:.3}, {:.3}): K = {:.6}, |H| = {:.6}",
        first.xi1, first.xi2, first.gauss_k, first.mean_h_norm
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
    let mut args = vec![
        "veronese".to_string(),
        "mesh".into(),
        "--model-N".into(),
        "2".into(),
        "--k".into(),
        "1".into(),
        "--r-min".into(),
        "0.2".into(),
        "--r-max".into(),
        "5".into(),
    ];
    args.extend(["--n-r", "6", "--n-phi", "8"].map(String::from));
    if let Some(path) = std::env::args().nth(1) {
        args.extend(["--out".into(), path]);
    }
    std::process::exit(veronese::cli::run(args));
}
