//! Explicit SO(3) realizations of the spherical triangle groups.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};

use super::{angle_denominator_bound, AngleCensus};
use crate::error::{Error, Result};
use crate::numtheory::Rational;
use crate::signature::{group_order, TriangleSignature};

const DEDUP_GRID: f64 = 1e9;
const RELATION_TOL: f64 = 1e-9;

/// The rotation matrices of a spherical triangle group together with the
/// generators they were closed from.
#[derive(Debug, Clone)]
pub struct RotationGroupRealization {
    pub signature: TriangleSignature,
    pub generator_a: Matrix3<f64>,
    pub generator_b: Matrix3<f64>,
    pub elements: Vec<Matrix3<f64>>,
}

impl RotationGroupRealization {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest entrywise deviation from the identity over `A^p`, `B^q`, `(AB)^r`.
    pub fn relation_residual(&self) -> f64 {
        let [p, q, r] = self.signature.orders();
        let ab = self.generator_a * self.generator_b;
        [
            (self.generator_a, p),
            (self.generator_b, q),
            (ab, r),
        ]
        .iter()
        .map(|(m, k)| deviation_from_identity(&matrix_power(m, *k)))
        .fold(0.0, f64::max)
    }

    /// Largest deviation found when multiplying every pair of elements and
    /// looking the product up in the set.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.elements {
            for b in &self.elements {
                let prod = a * b;
                let best = self
                    .elements
                    .iter()
                    .map(|c| (prod - c).abs().max())
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(best);
            }
        }
        worst
    }
}

fn matrix_power(m: &Matrix3<f64>, k: u64) -> Matrix3<f64> {
    (0..k).fold(Matrix3::identity(), |acc, _| acc * m)
}

fn deviation_from_identity(m: &Matrix3<f64>) -> f64 {
    (m - Matrix3::identity()).abs().max()
}

fn dedup_key(m: &Matrix3<f64>) -> [i64; 9] {
    let mut key = [0i64; 9];
    for (k, v) in key.iter_mut().zip(m.iter()) {
        *k = (v * DEDUP_GRID).round() as i64;
    }
    key
}

/// Builds the group from `A` = rotation by `2π/p` about `z` and `B` =
/// rotation by `2π/q` about an axis tilted by `θ` from `z`, where
/// `cos(π/r) = cos(π/p)cos(π/q) + sin(π/p)sin(π/q)cos θ`.
pub fn generate_rotation_group(sig: TriangleSignature) -> Result<RotationGroupRealization> {
    let order = group_order(sig)?;
    let [p, q, r] = sig.orders();
    let (hp, hq, hr) = (PI / p as f64, PI / q as f64, PI / r as f64);
    let cos_theta = ((hr.cos() - hp.cos() * hq.cos()) / (hp.sin() * hq.sin())).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();

    let a = *Rotation3::from_axis_angle(&Vector3::z_axis(), 2.0 * hp).matrix();
    let b_axis = Unit::new_normalize(Vector3::new(theta.sin(), 0.0, theta.cos()));
    let b = *Rotation3::from_axis_angle(&b_axis, 2.0 * hq).matrix();

    let limit = 2 * order as usize;
    let mut seen: HashMap<[i64; 9], usize> = HashMap::new();
    let mut elements = vec![Matrix3::identity()];
    seen.insert(dedup_key(&elements[0]), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in [&a, &b] {
            let next = elements[i] * g;
            let key = dedup_key(&next);
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= limit {
                return Err(Error::ClosureOverflow { sig, limit });
            }
            seen.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }

    let realization = RotationGroupRealization {
        signature: sig,
        generator_a: a,
        generator_b: b,
        elements,
    };
    if realization.len() as u64 != order {
        return Err(Error::GroupOrderMismatch {
            sig,
            found: realization.len(),
            expected: order,
        });
    }
    let residual = realization.relation_residual();
    if residual > RELATION_TOL {
        return Err(Error::RelationFailed {
            name: format!("A^{p} = B^{q} = (AB)^{r} = I"),
            residual,
        });
    }
    Ok(realization)
}

/// Signed rotation angle of `m` about its canonically oriented axis (first
/// non-negligible component positive), as a fraction of a full turn.
fn rotation_turn(m: &Matrix3<f64>, max_denominator: u64) -> Option<Rational> {
    let v = Vector3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]) * 0.5;
    let cos = ((m.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
    let sin = v.norm();
    let angle = sin.atan2(cos);
    let turn = if angle < 1e-9 {
        0.0
    } else {
        let axis = if sin > 1e-6 {
            v / sin
        } else {
            // half turn: R + I = 2uuᵀ, and the sign of u is irrelevant
            let sym = m + Matrix3::identity();
            let col = (0..3)
                .max_by(|&a, &b| sym.column(a).norm().total_cmp(&sym.column(b).norm()))
                .unwrap_or(0);
            sym.column(col).normalize()
        };
        let lead = axis.iter().copied().find(|c| c.abs() > 1e-6).unwrap_or(1.0);
        let signed = if lead > 0.0 { angle } else { 2.0 * PI - angle };
        signed / (2.0 * PI)
    };
    rationalize_turn(turn, max_denominator)
}

fn rationalize_turn(turn: f64, max_denominator: u64) -> Option<Rational> {
    for d in 1..=max_denominator as i64 {
        let n = (turn * d as f64).round();
        if (turn - n / d as f64).abs() < 1e-7 {
            let r = Rational::new(n as i64, d);
            return Some(r - r.floor());
        }
    }
    None
}

/// Recovers the angle census from explicit matrices.
pub fn census_from_matrices(group: &RotationGroupRealization) -> Option<AngleCensus> {
    let max_den = 2 * angle_denominator_bound(group.signature);
    let mut pairs = Vec::with_capacity(group.len());
    for m in &group.elements {
        pairs.push((rotation_turn(m, max_den)?, 1));
    }
    Some(AngleCensus::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::{angle_census, sweep_signatures};

    #[test]
    fn polyhedral_orders() {
        for (r, n) in [(3, 12), (4, 24), (5, 60)] {
            let sig = TriangleSignature::new(2, 3, r).unwrap();
            let g = generate_rotation_group(sig).unwrap();
            assert_eq!(g.len(), n);
            assert!(g.relation_residual() < 1e-12);
            assert!(g.closure_residual() < 1e-9);
        }
    }

    #[test]
    fn dihedral_order() {
        let g = generate_rotation_group(TriangleSignature::dihedral(6).unwrap()).unwrap();
        assert_eq!(g.len(), 12);
    }

    #[test]
    fn census_matches_generated_matrices() {
        for sig in sweep_signatures(24) {
            let g = generate_rotation_group(sig).unwrap();
            assert_eq!(
                census_from_matrices(&g).unwrap(),
                angle_census(sig).unwrap(),
                "{sig}"
            );
        }
    }

    #[test]
    fn elements_are_rotations() {
        let g = generate_rotation_group(TriangleSignature::new(2, 3, 5).unwrap()).unwrap();
        for m in &g.elements {
            assert!((m.determinant() - 1.0).abs() < 1e-12);
            assert!((m.transpose() * m - Matrix3::identity()).abs().max() < 1e-12);
        }
    }
}
