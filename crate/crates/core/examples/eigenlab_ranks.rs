// Numerical ranks of the averaging projections next to the exact
// multiplicities.

use trispec::eigenlab::{project_and_rank_sphere, project_and_rank_torus, DEFAULT_SEED, DEFAULT_TOLERANCE};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let octa = TriangleSignature::new(2, 3, 4)?;
    println!("{octa}, sampled harmonics:");
    for l in [1, 4, 6, 8, 9, 12] {
        let samples = 4 * (2 * l as usize + 1) + 8;
        let r = project_and_rank_sphere(octa, l, samples, DEFAULT_TOLERANCE, DEFAULT_SEED)?;
        println!("  l = {l:>2}: rank {} expected {} (gap {:.1e})", r.rank, r.expected, r.gap_ratio);
    }

    let hex = TriangleSignature::new(2, 3, 6)?;
    println!("{hex}, plane-wave orbits:");
    for lambda in [1, 7, 49, 91] {
        let r = project_and_rank_torus(hex, lambda, DEFAULT_TOLERANCE)?;
        println!("  λ = {lambda:>2}: {} waves, rank {} expected {}", r.basis_dimension, r.rank, r.expected);
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
