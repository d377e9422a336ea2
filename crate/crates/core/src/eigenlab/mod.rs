//! Numerical check that the averaging projection has the predicted rank.
//!
//! On the sphere, degree-`l` harmonics are averaged over an explicit SO(3)
//! realization of the group and sampled at random points; the numerical
//! rank of the sampled matrix is the dimension of the invariant subspace.
//! On a torus, the quotient rotation permutes plane waves, so the
//! projection is an orbit-averaging matrix over the index pairs of one
//! eigenvalue.

mod legendre;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclidean::{
    dual_rotation_map, lattice_model, orbifold_multiplicity_with, torus_multiplicity, LatticeModel,
};
use crate::signature::{GeometryClass, TriangleSignature};
use crate::spherical::{generate_rotation_group, multiplicity_closed, RotationGroupRealization};

pub use legendre::{ferrers, ferrers_signed, normalized_row, sphere_basis_eval};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const MIN_GAP_RATIO: f64 = 1e3;
pub const MAX_SPHERE_DEGREE: u64 = 30;
pub const MAX_TORUS_LAMBDA: u64 = 200;
pub const DEFAULT_SEED: u64 = 0x7215_bec0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionRankReport {
    pub signature: TriangleSignature,
    pub eigenvalue: u64,
    pub degree: Option<u64>,
    pub basis_dimension: usize,
    pub rank: usize,
    pub expected: u64,
    pub smallest_retained: Option<f64>,
    pub largest_discarded: Option<f64>,
    pub gap_ratio: f64,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl ProjectionRankReport {
    pub fn is_consistent(&self) -> bool {
        self.rank as u64 == self.expected
    }
}

struct RankOutcome {
    rank: usize,
    smallest_retained: Option<f64>,
    largest_discarded: Option<f64>,
    gap_ratio: f64,
}

/// Counts singular values above `tol · reference` and measures the gap to
/// the first discarded one. With nothing retained the reference itself is
/// the lower side of the gap.
fn numerical_rank(mut singular: Vec<f64>, reference: f64, tol: f64) -> Result<RankOutcome> {
    singular.sort_by(|a, b| b.total_cmp(a));
    let cutoff = tol * reference;
    let rank = singular.iter().take_while(|&&s| s > cutoff).count();
    let smallest_retained = rank.checked_sub(1).map(|i| singular[i]);
    let largest_discarded = singular.get(rank).copied();
    let upper = smallest_retained.unwrap_or(reference);
    let gap_ratio = match largest_discarded {
        Some(d) if d > 0.0 => upper / d,
        _ => f64::INFINITY,
    };
    if gap_ratio < MIN_GAP_RATIO {
        return Err(Error::InconclusiveRank { gap: gap_ratio });
    }
    Ok(RankOutcome {
        rank,
        smallest_retained,
        largest_discarded,
        gap_ratio,
    })
}

fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

fn spherical_angles(v: &Vector3<f64>) -> (f64, f64) {
    let z = (v.z / v.norm()).clamp(-1.0, 1.0);
    (z.acos(), v.y.atan2(v.x))
}

fn random_unit_vectors(count: usize, seed: u64) -> Vec<Vector3<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * PI);
            let r = (1.0 - z * z).sqrt();
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// `(Pψ)(x) = (1/|G|) Σ_g ψ(g x)` for every degree-`l` basis function.
fn projected_row(group: &RotationGroupRealization, l: u64, x: &Vector3<f64>) -> Vec<Complex64> {
    let dim = 2 * l as usize + 1;
    let mut acc = vec![Complex64::new(0.0, 0.0); dim];
    for g in &group.elements {
        let (theta, phi) = spherical_angles(&(g * x));
        for (a, v) in acc.iter_mut().zip(normalized_row(l, theta, phi)) {
            *a += v;
        }
    }
    let scale = 1.0 / group.len() as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    acc
}

/// Numerical rank of the averaging projection on degree-`l` harmonics.
pub fn project_and_rank_sphere(
    sig: TriangleSignature,
    l: u64,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ProjectionRankReport> {
    sig.expect(GeometryClass::Spherical)?;
    let group = generate_rotation_group(sig)?;
    project_and_rank_sphere_with(&group, l, samples, tol, seed)
}

/// As [`project_and_rank_sphere`] with a prebuilt group, for sweeps.
pub fn project_and_rank_sphere_with(
    group: &RotationGroupRealization,
    l: u64,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ProjectionRankReport> {
    if l > MAX_SPHERE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: l,
            max: MAX_SPHERE_DEGREE,
        });
    }
    let dim = 2 * l as usize + 1;
    let needed = 4 * dim;
    if samples < needed {
        return Err(Error::TooFewSamples {
            degree: l,
            samples,
            needed,
        });
    }
    let points = random_unit_vectors(samples, seed);
    let mut projected = DMatrix::<Complex64>::zeros(samples, dim);
    let mut raw = DMatrix::<Complex64>::zeros(samples, dim);
    for (j, x) in points.iter().enumerate() {
        let (theta, phi) = spherical_angles(x);
        for (k, v) in normalized_row(l, theta, phi).into_iter().enumerate() {
            raw[(j, k)] = v;
        }
        for (k, v) in projected_row(group, l, x).into_iter().enumerate() {
            projected[(j, k)] = v;
        }
    }
    let reference = singular_values(&raw).into_iter().fold(0.0, f64::max);
    let outcome = numerical_rank(singular_values(&projected), reference, tol)?;
    Ok(ProjectionRankReport {
        signature: group.signature,
        eigenvalue: l * (l + 1),
        degree: Some(l),
        basis_dimension: dim,
        rank: outcome.rank,
        expected: multiplicity_closed(group.signature, l)?,
        smallest_retained: outcome.smallest_retained,
        largest_discarded: outcome.largest_discarded,
        gap_ratio: outcome.gap_ratio,
        samples,
        seed: Some(seed),
    })
}

/// Largest relative deviation between `P(Pψ)` and `Pψ` over sampled points.
pub fn sphere_idempotence_residual(
    group: &RotationGroupRealization,
    l: u64,
    points: usize,
    seed: u64,
) -> f64 {
    let mut worst = 0.0f64;
    for x in random_unit_vectors(points, seed) {
        let once = projected_row(group, l, &x);
        let dim = once.len();
        let mut twice = vec![Complex64::new(0.0, 0.0); dim];
        for h in &group.elements {
            for (t, v) in twice.iter_mut().zip(projected_row(group, l, &(h * x))) {
                *t += v;
            }
        }
        let scale_ref = normalized_row(l, 0.0, 0.0)
            .iter()
            .map(|v| v.norm())
            .fold(1.0, f64::max);
        for (t, o) in twice.iter().zip(&once) {
            let t = t / group.len() as f64;
            worst = worst.max((t - o).norm() / scale_ref);
        }
    }
    worst
}

/// Plane wave `ψ_{m,n}(x, y) = exp(i k_{m,n}·(x, y))`.
pub fn torus_basis_eval(model: &LatticeModel, m: i64, n: i64, x: f64, y: f64) -> Complex64 {
    let k = model.wavevector(m, n);
    Complex64::from_polar(1.0, k[0] * x + k[1] * y)
}

/// Rank of the orbit-averaging matrix on the plane waves of eigenvalue `lambda`.
pub fn project_and_rank_torus(
    sig: TriangleSignature,
    lambda: u64,
    tol: f64,
) -> Result<ProjectionRankReport> {
    let model = lattice_model(sig)?;
    if lambda > MAX_TORUS_LAMBDA {
        return Err(Error::DegreeTooLarge {
            degree: lambda,
            max: MAX_TORUS_LAMBDA,
        });
    }
    if torus_multiplicity(&model, lambda) == 0 {
        return Err(Error::NotRepresentable(lambda));
    }
    let map = dual_rotation_map(sig)?;
    let pairs = model.dual_form.representations(lambda);
    let dim = pairs.len();
    let index = |v: (i64, i64)| pairs.binary_search(&v).expect("M preserves the eigenvalue");

    let mut proj = DMatrix::<Complex64>::zeros(dim, dim);
    let weight = Complex64::new(1.0 / map.order as f64, 0.0);
    for (col, &v) in pairs.iter().enumerate() {
        let mut w = v;
        for _ in 0..map.order {
            proj[(index(w), col)] += weight;
            w = map.apply(w);
        }
    }
    let outcome = numerical_rank(singular_values(&proj), 1.0, tol)?;
    Ok(ProjectionRankReport {
        signature: sig,
        eigenvalue: lambda,
        degree: None,
        basis_dimension: dim,
        rank: outcome.rank,
        expected: orbifold_multiplicity_with(&model, lambda)?,
        smallest_retained: outcome.smallest_retained,
        largest_discarded: outcome.largest_discarded,
        gap_ratio: outcome.gap_ratio,
        samples: dim,
        seed: None,
    })
}

/// Number of orbits of the dual rotation on the index pairs of `lambda`.
pub fn torus_orbit_count(sig: TriangleSignature, lambda: u64) -> Result<usize> {
    let model = lattice_model(sig)?;
    let map = dual_rotation_map(sig)?;
    let mut remaining: BTreeSet<(i64, i64)> =
        model.dual_form.representations(lambda).into_iter().collect();
    let mut orbits = 0;
    while let Some(&start) = remaining.iter().next() {
        let mut w = start;
        for _ in 0..map.order {
            remaining.remove(&w);
            w = map.apply(w);
        }
        orbits += 1;
    }
    Ok(orbits)
}

/// Invariant combinations of `e^{±imφ} P_l^m` under the dihedral group,
/// counted directly: the `z`-rotation by `2π/n` keeps only `m ≡ 0 (mod n)`,
/// and the half turn about the `x`-axis sends `P_l^m(cos θ) e^{imφ}` to
/// `(−1)^{l+m} P_l^m(cos θ) e^{−imφ}`, so each allowed `m > 0` leaves
/// exactly one invariant (cosine when `l+m` is even, sine otherwise) and
/// `m = 0` survives only for even `l`.
pub fn dihedral_legendre_multiplicity(n: u64, l: u64) -> u64 {
    assert!(n >= 2, "dihedral order must be at least 2");
    let mut count = 0;
    if l.is_multiple_of(2) {
        count += 1;
    }
    let mut m = n;
    while m <= l {
        // one of the cos/sin branches is invariant, whichever parity l + m has
        count += 1;
        m += n;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, q: u64, r: u64) -> TriangleSignature {
        TriangleSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn sphere_rank_examples() {
        let r = project_and_rank_sphere(sig(2, 3, 5), 6, 60, DEFAULT_TOLERANCE, 1).unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.is_consistent());
        for r3 in 3..=5 {
            let r = project_and_rank_sphere(sig(2, 3, r3), 1, 12, DEFAULT_TOLERANCE, 2).unwrap();
            assert_eq!(r.rank, 0);
        }
        let r = project_and_rank_sphere(sig(2, 2, 2), 2, 20, DEFAULT_TOLERANCE, 3).unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn sphere_rank_preconditions() {
        assert!(matches!(
            project_and_rank_sphere(sig(2, 3, 5), 31, 500, DEFAULT_TOLERANCE, 1),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            project_and_rank_sphere(sig(2, 3, 5), 3, 27, DEFAULT_TOLERANCE, 1),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(project_and_rank_sphere(sig(2, 4, 4), 3, 40, DEFAULT_TOLERANCE, 1).is_err());
    }

    #[test]
    fn torus_rank_examples() {
        let r = project_and_rank_torus(sig(2, 3, 6), 7, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.basis_dimension, r.rank), (12, 2));
        let r = project_and_rank_torus(sig(2, 4, 4), 5, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.basis_dimension, r.rank), (8, 2));
        let r = project_and_rank_torus(sig(3, 3, 3), 3, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.basis_dimension, r.rank), (6, 2));
        assert_eq!(torus_orbit_count(sig(2, 3, 6), 7).unwrap(), 2);
        assert!(matches!(
            project_and_rank_torus(sig(2, 4, 4), 3, DEFAULT_TOLERANCE),
            Err(Error::NotRepresentable(3))
        ));
    }

    #[test]
    fn rotated_plane_wave_is_indexed_plane_wave() {
        for s in crate::euclidean::signatures() {
            let model = lattice_model(s).unwrap();
            let map = dual_rotation_map(s).unwrap();
            let angle = 2.0 * PI / map.order as f64;
            let (c, sn) = (angle.cos(), angle.sin());
            for &(m, n) in &[(1, 0), (2, -3), (-4, 1)] {
                let (a, b) = map.apply((m, n));
                for &(x, y) in &[(0.3, 1.7), (-2.0, 0.25)] {
                    let (gx, gy) = (c * x - sn * y, sn * x + c * y);
                    let lhs = torus_basis_eval(&model, m, n, gx, gy);
                    let rhs = torus_basis_eval(&model, a, b, x, y);
                    assert!((lhs - rhs).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn plane_waves_are_periodic() {
        let model = lattice_model(sig(2, 3, 6)).unwrap();
        let t = model.tau_vector();
        let s = model.sigma_vector();
        let (x, y) = (0.4, -1.3);
        for &(m, n) in &[(1, 0), (3, -2), (5, 7)] {
            let base = torus_basis_eval(&model, m, n, x, y);
            assert!((torus_basis_eval(&model, m, n, x + t[0], y + t[1]) - base).norm() < 1e-9);
            assert!((torus_basis_eval(&model, m, n, x + s[0], y + s[1]) - base).norm() < 1e-9);
        }
    }

    #[test]
    fn dihedral_examples() {
        assert_eq!(dihedral_legendre_multiplicity(2, 3), 1);
        assert_eq!(dihedral_legendre_multiplicity(3, 6), 3);
        assert_eq!(dihedral_legendre_multiplicity(5, 3), 0);
    }

    #[test]
    fn idempotence() {
        let g = generate_rotation_group(sig(2, 3, 4)).unwrap();
        assert!(sphere_idempotence_residual(&g, 4, 4, 9) < 1e-8);
    }

    #[test]
    fn rank_gate_rejects_small_gaps() {
        assert!(numerical_rank(vec![1.0, 0.5, 1e-9], 1.0, 1e-8).is_ok());
        assert!(matches!(
            numerical_rank(vec![1.0, 1e-7, 1e-9], 1.0, 1e-8),
            Err(Error::InconclusiveRank { .. })
        ));
    }
}
