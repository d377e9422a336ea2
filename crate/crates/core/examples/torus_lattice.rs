// Torus spectra of the euclidean groups: divisor formulas, lattice points
// and the dual rotation that permutes them.

use trispec::euclidean::{
    dual_rotation_map, lattice_model, orbifold_multiplicity, torus_multiplicity, verify_fixed_point_free,
};
use trispec::TriangleSignature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q, r) in [(2, 3, 6), (2, 4, 4), (3, 3, 3)] {
        let sig = TriangleSignature::new(p, q, r)?;
        let model = lattice_model(sig)?;
        let map = dual_rotation_map(sig)?;
        println!("{sig}: {:?} lattice, |S| = {}, M = {:?}", model.kind, model.quotient_order, map.matrix);
        println!("  det(M^i - I): {:?}", verify_fixed_point_free(sig)?.determinants);

        let lambda = if model.quotient_order == 4 { 25 } else { 49 };
        let points = model.dual_form.representations(lambda);
        println!(
            "  λ = {lambda}: {} plane waves {:?}, torus μ = {}, orbifold μ = {}",
            points.len(),
            points,
            torus_multiplicity(&model, lambda),
            orbifold_multiplicity(sig, lambda)?
        );
        let w = model.wavevector(points[0].0, points[0].1);
        println!("  k{:?} = ({:.6}, {:.6})", points[0], w[0], w[1]);
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
