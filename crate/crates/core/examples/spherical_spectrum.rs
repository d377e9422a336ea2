// Icosahedral spectrum: closed form against the character sum, and the
// low invariant degrees.

use trispec::spherical::{angle_census, charsum_value, multiplicity_closed, spectrum_by_degree};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sig = TriangleSignature::new(2, 3, 5)?;
    println!("census of {sig}:");
    for e in &angle_census(sig)?.entries {
        println!("  angle {:>4} turn  x{}", e.turn.to_string(), e.count);
    }

    println!("\n  l   λ      charsum           closed");
    for l in [0, 1, 6, 10, 15, 30, 31] {
        let raw = charsum_value(sig, l)?;
        println!("{l:>3} {:>5} {raw:>16.12} {:>4}", l * (l + 1), multiplicity_closed(sig, l)?);
    }

    let degrees: Vec<u64> = spectrum_by_degree(sig, 40, false)?
        .iter()
        .filter_map(|e| e.degree_l)
        .collect();
    println!("\ninvariant degrees up to 40: {degrees:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
