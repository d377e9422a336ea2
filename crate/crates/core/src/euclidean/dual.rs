use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use super::{lattice_model, LatticeModel};
use crate::error::{Error, Result};
use crate::signature::TriangleSignature;

/// Integer action of the quotient generator `γ` on plane-wave indices:
/// `ψ_{m,n} ∘ γ = ψ_{M(m,n)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRotationMap {
    /// Row-major; `M (m, n)ᵀ = (m', n')ᵀ`.
    pub matrix: [[i64; 2]; 2],
    pub order: u64,
}

impl DualRotationMap {
    pub fn apply(&self, (m, n): (i64, i64)) -> (i64, i64) {
        let a = self.matrix;
        (a[0][0] * m + a[0][1] * n, a[1][0] * m + a[1][1] * n)
    }

    pub fn compose(&self, other: &DualRotationMap) -> [[i64; 2]; 2] {
        mat_mul(self.matrix, other.matrix)
    }

    pub fn power(&self, k: u64) -> [[i64; 2]; 2] {
        (0..k).fold([[1, 0], [0, 1]], |acc, _| mat_mul(acc, self.matrix))
    }

    pub fn determinant(&self) -> i64 {
        det(self.matrix)
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn det(a: [[i64; 2]; 2]) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Derives the index map by rotating each basis wavevector with `γᵀ`
/// (`γ` the counter-clockwise rotation by `2π/|S|`) and solving for the
/// integer indices of the result.
pub fn dual_rotation_map(sig: TriangleSignature) -> Result<DualRotationMap> {
    let model = lattice_model(sig)?;
    dual_rotation_map_for(&model)
}

pub(crate) fn dual_rotation_map_for(model: &LatticeModel) -> Result<DualRotationMap> {
    let angle = 2.0 * PI / model.quotient_order as f64;
    let (c, s) = (angle.cos(), angle.sin());
    let gamma_t = Matrix2::new(c, s, -s, c);

    let k10 = model.wavevector(1, 0);
    let k01 = model.wavevector(0, 1);
    let basis = Matrix2::new(k10[0], k01[0], k10[1], k01[1]);
    let inverse = basis
        .try_inverse()
        .expect("dual basis vectors are independent");

    let mut matrix = [[0i64; 2]; 2];
    for (col, (m, n)) in [(1, 0), (0, 1)].into_iter().enumerate() {
        let k = model.wavevector(m, n);
        let rotated = gamma_t * Vector2::new(k[0], k[1]);
        let idx = inverse * rotated;
        for row in 0..2 {
            let rounded = idx[row].round();
            let residual = (idx[row] - rounded).abs();
            if residual > 1e-9 {
                return Err(Error::RelationFailed {
                    name: format!("rotated wavevector k({m},{n}) lies on the dual lattice"),
                    residual,
                });
            }
            matrix[row][col] = rounded as i64;
        }
    }

    let map = DualRotationMap {
        matrix,
        order: model.quotient_order,
    };
    check_map(model, &map)?;
    Ok(map)
}

fn check_map(model: &LatticeModel, map: &DualRotationMap) -> Result<()> {
    if map.determinant().abs() != 1 {
        return Err(Error::RelationFailed {
            name: "det M = ±1".into(),
            residual: (map.determinant().abs() - 1) as f64,
        });
    }
    if map.power(map.order) != [[1, 0], [0, 1]] {
        return Err(Error::RelationFailed {
            name: format!("M^{} = I", map.order),
            residual: 1.0,
        });
    }
    for m in -6..=6 {
        for n in -6..=6 {
            let (a, b) = map.apply((m, n));
            if model.dual_form.eval(a, b) != model.dual_form.eval(m, n) {
                return Err(Error::RelationFailed {
                    name: format!("M preserves the dual form at ({m},{n})"),
                    residual: 1.0,
                });
            }
            // the rotated wave must be the indexed wave
            let k = model.wavevector(m, n);
            let kk = model.wavevector(a, b);
            let angle = 2.0 * PI / map.order as f64;
            let (c, s) = (angle.cos(), angle.sin());
            let rx = c * k[0] + s * k[1];
            let ry = -s * k[0] + c * k[1];
            let residual = (rx - kk[0]).abs().max((ry - kk[1]).abs());
            if residual > 1e-9 {
                return Err(Error::RelationFailed {
                    name: format!("γᵀ k({m},{n}) = k(M({m},{n}))"),
                    residual,
                });
            }
        }
    }
    Ok(())
}

/// `det(M^i − I)` for each `1 <= i < |S|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub signature: TriangleSignature,
    pub determinants: Vec<(u64, i64)>,
}

impl FixedPointReport {
    pub fn all_nonzero(&self) -> bool {
        self.determinants.iter().all(|&(_, d)| d != 0)
    }
}

/// A nonzero `det(M^i − I)` means `M^i` fixes no nonzero index pair, so the
/// matrix of `γ^i` on any torus eigenspace has an all-zero diagonal.
pub fn verify_fixed_point_free(sig: TriangleSignature) -> Result<FixedPointReport> {
    let map = dual_rotation_map(sig)?;
    let mut determinants = Vec::new();
    for i in 1..map.order {
        let mut p = map.power(i);
        p[0][0] -= 1;
        p[1][1] -= 1;
        let d = det(p);
        if d == 0 {
            return Err(Error::FixedPoint { power: i as u32 });
        }
        determinants.push((i, d));
    }
    Ok(FixedPointReport {
        signature: sig,
        determinants,
    })
}
