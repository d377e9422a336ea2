// The finite sawtooth identity behind the dihedral multiplicities.

use trispec::numtheory::EisensteinSum;
use trispec::spherical::{dihedral_charsum_display, dihedral_multiplicity_eisenstein, multiplicity_closed};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sum = EisensteinSum::new(7);
    println!("n = 7");
    for l in [0, 1, 3, 7, 10, 100] {
        println!(
            "  l = {l:>3}: trig {:>10.6}  sawtooth {:>6}  residual {:.1e}",
            sum.trig_side(l),
            sum.sawtooth_side(l).to_string(),
            sum.residual(l)
        );
    }

    let n = 5;
    let sig = TriangleSignature::dihedral(n)?;
    println!("\n{sig} multiplicity by three routes:");
    for l in 0..=10 {
        println!(
            "  l = {l:>2}: exact {}  trig {:.9}  closed {}",
            dihedral_multiplicity_eisenstein(n, l),
            dihedral_charsum_display(n, l),
            multiplicity_closed(sig, l)?
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
