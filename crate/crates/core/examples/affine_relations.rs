// Realize the euclidean generators as plane isometries and check every
// relation of the presentation.

use trispec::euclidean::realize_generators_affine;
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, r) in [(2, 3, 6), (2, 4, 4), (3, 3, 3)] {
        let sig = TriangleSignature::new(p, q, r)?;
        let real = realize_generators_affine(sig)?;
        println!(
            "{sig}: α turns {} about ({:.6}, {:.6})",
            real.alpha.turn, real.alpha_center.x, real.alpha_center.y
        );
        for check in &real.checks {
            println!("  {:<40} {:.1e}", check.name, check.residual);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
