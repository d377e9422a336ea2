// Classify signatures and list the non-hyperbolic ones with their orders.

use trispec::signature::enumerate;
use trispec::{classify, group_order, GeometryClass, TriangleSignature};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["2,3,5", "(6, 3, 2)", "2 3 7", "3 3 3"] {
        let sig: TriangleSignature = text.parse()?;
        println!("{text:>10} -> {sig} {}", classify(sig));
    }

    println!("\nspherical signatures with orders up to 8:");
    for sig in enumerate(8, GeometryClass::Spherical) {
        println!("  {sig}  |Γ| = {}", group_order(sig)?);
    }
    println!("euclidean: {:?}", enumerate(100, GeometryClass::Euclidean));

    match TriangleSignature::parse("2", "2", "inf") {
        Err(e) => println!("2,2,inf rejected: {e}"),
        Ok(sig) => return Err(format!("{sig} should not parse").into()),
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
