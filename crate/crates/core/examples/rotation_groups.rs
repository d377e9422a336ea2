// Generate the finite rotation groups as matrices and read their censuses
// back off the matrices.

use trispec::spherical::{angle_census, census_from_matrices, generate_rotation_group};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, r) in [(2, 2, 7), (2, 3, 3), (2, 3, 4), (2, 3, 5)] {
        let sig = TriangleSignature::new(p, q, r)?;
        let group = generate_rotation_group(sig)?;
        let census = census_from_matrices(&group).ok_or("unrecognised rotation angle")?;
        println!(
            "{sig}: {} elements, relation residual {:.1e}, census matches: {}",
            group.len(),
            group.relation_residual(),
            census == angle_census(sig)?
        );
        let summary: Vec<String> = census
            .entries
            .iter()
            .map(|e| format!("{}:{}", e.turn, e.count))
            .collect();
        println!("  {}", summary.join(" "));
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
