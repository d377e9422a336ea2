// Eigenvalue counting functions against their Weyl leading terms.

use trispec::euclidean::counting_euclidean;
use trispec::spherical::{counting_spherical, weyl_leading_spherical, weyl_remainder_maxima};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ico = TriangleSignature::new(2, 3, 5)?;
    for big_l in [10, 100, 1000] {
        let n = counting_spherical(ico, big_l)?;
        let lead = weyl_leading_spherical(ico, big_l)?;
        println!("{ico} L = {big_l:>4}: N = {n:>6}, (L+1)²/60 = {lead:>10.3}");
    }
    let (short, long) = weyl_remainder_maxima(ico, 200, 5000)?;
    println!("  max remainder: {short:.4} to L = 200, {long:.4} to L = 5000");

    for (p, q, r) in [(2, 4, 4), (2, 3, 6), (3, 3, 3)] {
        let sig = TriangleSignature::new(p, q, r)?;
        let rep = counting_euclidean(sig, 20_000)?;
        println!(
            "{sig} Λ = 20000: N = {}, cΛ = {:.1}, N/Λ - c = {:+.2e}",
            rep.count,
            rep.leading_term(),
            rep.ratio() - rep.leading_coefficient
        );
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
