//! Spectra of the euclidean triangle groups.
//!
//! Each group contains a maximal normal subgroup of translations `T`, a
//! lattice generated by `tau` and `sigma`. Plane waves over the dual lattice
//! are the torus eigenfunctions, so torus multiplicities are representation
//! numbers of a binary quadratic form. The finite cyclic quotient `S = Γ/T`
//! permutes those plane waves without fixed points, which makes the orbifold
//! multiplicity exactly `μ_T(λ) / |S|` for `λ > 0`.
//!
//! Lengths follow the translation conventions `tau = (4π/√3, 0)`,
//! `sigma = (2π/√3, 2π)` for the hexagonal lattice and `tau = (2π, 0)`,
//! `sigma = (0, 2π)` for the square lattice. Under them every eigenvalue is
//! an integer.

mod affine;
mod dual;
mod surd;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{DivisorFormula, QuadraticForm, Rational};
use crate::signature::{GeometryClass, SpectrumEntry, TriangleSignature};

pub use affine::{
    realize_generators_affine, AffineIsometry, AffineRealization, RelationCheck, Word,
};
pub use dual::{dual_rotation_map, verify_fixed_point_free, DualRotationMap, FixedPointReport};
pub use surd::QSqrt3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Hexagonal,
    Square,
}

/// Translation lattice of a euclidean triangle group and the data needed
/// to count its torus spectrum. Translation components are stored in
/// units of `π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeModel {
    pub signature: TriangleSignature,
    pub kind: LatticeKind,
    pub tau: [QSqrt3; 2],
    pub sigma: [QSqrt3; 2],
    pub dual_form: QuadraticForm,
    pub quotient_order: u64,
    pub divisor_formula: DivisorFormula,
}

pub fn lattice_model(sig: TriangleSignature) -> Result<LatticeModel> {
    sig.expect(GeometryClass::Euclidean)?;
    let r = Rational::from_integer;
    let (kind, quotient_order) = match sig.orders() {
        [2, 3, 6] => (LatticeKind::Hexagonal, 6),
        [3, 3, 3] => (LatticeKind::Hexagonal, 3),
        [2, 4, 4] => (LatticeKind::Square, 4),
        _ => unreachable!("{sig} classified euclidean but is not in the known list"),
    };
    let model = match kind {
        LatticeKind::Hexagonal => LatticeModel {
            signature: sig,
            kind,
            tau: [QSqrt3::over_root3(r(4)), QSqrt3::ZERO],
            sigma: [QSqrt3::over_root3(r(2)), QSqrt3::integer(2)],
            dual_form: QuadraticForm::HEXAGONAL,
            quotient_order,
            divisor_formula: DivisorFormula::HEXAGONAL,
        },
        LatticeKind::Square => LatticeModel {
            signature: sig,
            kind,
            tau: [QSqrt3::integer(2), QSqrt3::ZERO],
            sigma: [QSqrt3::ZERO, QSqrt3::integer(2)],
            dual_form: QuadraticForm::SQUARE,
            quotient_order,
            divisor_formula: DivisorFormula::SQUARE,
        },
    };
    Ok(model)
}

impl LatticeModel {
    pub fn tau_vector(&self) -> [f64; 2] {
        [PI * self.tau[0].to_f64(), PI * self.tau[1].to_f64()]
    }

    pub fn sigma_vector(&self) -> [f64; 2] {
        [PI * self.sigma[0].to_f64(), PI * self.sigma[1].to_f64()]
    }

    /// Dual wavevector `k_{m,n}`: `(√3 m/2, (2n+m)/2)` on the hexagonal
    /// lattice and `(m, n)` on the square one.
    pub fn wavevector_exact(&self, m: i64, n: i64) -> [QSqrt3; 2] {
        match self.kind {
            LatticeKind::Hexagonal => [
                QSqrt3::root3(Rational::new(m, 2)),
                QSqrt3::rational(Rational::new(2 * n + m, 2)),
            ],
            LatticeKind::Square => [QSqrt3::integer(m), QSqrt3::integer(n)],
        }
    }

    pub fn wavevector(&self, m: i64, n: i64) -> [f64; 2] {
        let k = self.wavevector_exact(m, n);
        [k[0].to_f64(), k[1].to_f64()]
    }

    /// `|k_{m,n}|²` in exact arithmetic.
    pub fn eigenvalue_exact(&self, m: i64, n: i64) -> Rational {
        let [x, y] = self.wavevector_exact(m, n);
        (x * x + y * y)
            .as_rational()
            .expect("squared wavevector length is rational")
    }

    /// `k_{m,n}·tau / 2π` and `k_{m,n}·sigma / 2π`; both are integers
    /// exactly when the plane wave is periodic.
    pub fn phase_turns(&self, m: i64, n: i64) -> (QSqrt3, QSqrt3) {
        let k = self.wavevector_exact(m, n);
        let half = QSqrt3::rational(Rational::new(1, 2));
        let dot = |v: &[QSqrt3; 2]| (k[0] * v[0] + k[1] * v[1]) * half;
        (dot(&self.tau), dot(&self.sigma))
    }

    /// True when both phase turns are exact integers.
    pub fn is_periodic(&self, m: i64, n: i64) -> bool {
        let (t, s) = self.phase_turns(m, n);
        [t, s]
            .iter()
            .all(|v| v.as_rational().is_some_and(|r| r.is_integer()))
    }

    /// Weyl leading coefficient of the orbifold counting function:
    /// `π/|S|` on the square lattice and `2π/(√3|S|)` on the hexagonal one.
    pub fn weyl_coefficient(&self) -> f64 {
        let s = self.quotient_order as f64;
        match self.kind {
            LatticeKind::Square => PI / s,
            LatticeKind::Hexagonal => 2.0 * PI / (3f64.sqrt() * s),
        }
    }
}

/// Multiplicity of `lambda` on the torus `R²/T`.
pub fn torus_multiplicity(model: &LatticeModel, lambda: u64) -> u64 {
    if lambda == 0 {
        return 1;
    }
    model
        .divisor_formula
        .eval(lambda)
        .expect("lambda >= 1 and residues are valid")
}

/// Multiplicity of `lambda` on the orbifold `R²/Γ`.
pub fn orbifold_multiplicity(sig: TriangleSignature, lambda: u64) -> Result<u64> {
    let model = lattice_model(sig)?;
    orbifold_multiplicity_with(&model, lambda)
}

pub fn orbifold_multiplicity_with(model: &LatticeModel, lambda: u64) -> Result<u64> {
    if lambda == 0 {
        return Ok(1);
    }
    let torus = torus_multiplicity(model, lambda);
    if !torus.is_multiple_of(model.quotient_order) {
        return Err(Error::InexactQuotient {
            lambda,
            torus,
            quotient: model.quotient_order,
        });
    }
    Ok(torus / model.quotient_order)
}

/// Multiplicity for a real-valued query. Under the chosen normalization the
/// spectrum lies in the non-negative integers, so anything else gets 0.
pub fn orbifold_multiplicity_real(sig: TriangleSignature, lambda: f64) -> Result<u64> {
    if !lambda.is_finite() || lambda < 0.0 || lambda.fract() != 0.0 || lambda > u64::MAX as f64 {
        sig.expect(GeometryClass::Euclidean)?;
        return Ok(0);
    }
    orbifold_multiplicity(sig, lambda as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub max_lambda: u64,
    pub count: u64,
    pub leading_coefficient: f64,
}

impl CountReport {
    pub fn leading_term(&self) -> f64 {
        self.leading_coefficient * self.max_lambda as f64
    }

    pub fn ratio(&self) -> f64 {
        self.count as f64 / self.max_lambda as f64
    }

    pub fn remainder(&self) -> f64 {
        self.count as f64 - self.leading_term()
    }
}

/// `N(Λ) = Σ_{λ=0}^{Λ} μ(λ)` with the Weyl leading coefficient.
pub fn counting_euclidean(sig: TriangleSignature, max_lambda: u64) -> Result<CountReport> {
    let model = lattice_model(sig)?;
    let mut count = 0;
    for lambda in 0..=max_lambda {
        count += orbifold_multiplicity_with(&model, lambda)?;
    }
    Ok(CountReport {
        max_lambda,
        count,
        leading_coefficient: model.weyl_coefficient(),
    })
}

pub fn spectrum(
    sig: TriangleSignature,
    max_lambda: u64,
    include_zeros: bool,
) -> Result<Vec<SpectrumEntry>> {
    let model = lattice_model(sig)?;
    let mut out = Vec::new();
    for lambda in 0..=max_lambda {
        let mult = orbifold_multiplicity_with(&model, lambda)?;
        if include_zeros || mult > 0 {
            out.push(SpectrumEntry::euclidean(lambda, mult));
        }
    }
    Ok(out)
}

/// The three euclidean signatures.
pub fn signatures() -> [TriangleSignature; 3] {
    [
        TriangleSignature::new(2, 3, 6).expect("valid"),
        TriangleSignature::new(2, 4, 4).expect("valid"),
        TriangleSignature::new(3, 3, 3).expect("valid"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, q: u64, r: u64) -> TriangleSignature {
        TriangleSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn model_examples() {
        let hex = lattice_model(sig(2, 3, 6)).unwrap();
        assert_eq!(hex.quotient_order, 6);
        let tri = lattice_model(sig(3, 3, 3)).unwrap();
        assert_eq!(tri.tau, hex.tau);
        assert_eq!(tri.sigma, hex.sigma);
        assert_eq!(tri.quotient_order, 3);
        assert_eq!(lattice_model(sig(2, 4, 4)).unwrap().quotient_order, 4);
        assert!(lattice_model(sig(2, 3, 5)).is_err());

        let t = hex.tau_vector();
        assert!((t[0] - 4.0 * PI / 3f64.sqrt()).abs() < 1e-12 && t[1] == 0.0);
        let s = hex.sigma_vector();
        assert!((s[0] - 2.0 * PI / 3f64.sqrt()).abs() < 1e-12 && (s[1] - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn torus_examples() {
        let hex = lattice_model(sig(2, 3, 6)).unwrap();
        let square = lattice_model(sig(2, 4, 4)).unwrap();
        assert_eq!(torus_multiplicity(&hex, 3), 6);
        assert_eq!(torus_multiplicity(&square, 5), 8);
        assert_eq!(torus_multiplicity(&hex, 0), 1);
        assert_eq!(torus_multiplicity(&square, 0), 1);
    }

    #[test]
    fn orbifold_examples() {
        assert_eq!(orbifold_multiplicity(sig(2, 3, 6), 7).unwrap(), 2);
        assert_eq!(orbifold_multiplicity(sig(2, 4, 4), 3).unwrap(), 0);
        assert_eq!(orbifold_multiplicity(sig(3, 3, 3), 1).unwrap(), 2);
        assert_eq!(orbifold_multiplicity(sig(2, 4, 4), 10).unwrap(), 2);
        for s in signatures() {
            assert_eq!(orbifold_multiplicity(s, 0).unwrap(), 1);
        }
    }

    #[test]
    fn non_integer_queries_are_zero() {
        let s = sig(2, 4, 4);
        assert_eq!(orbifold_multiplicity_real(s, 5.0).unwrap(), 2);
        assert_eq!(orbifold_multiplicity_real(s, 5.5).unwrap(), 0);
        assert_eq!(orbifold_multiplicity_real(s, -1.0).unwrap(), 0);
        assert!(orbifold_multiplicity_real(sig(2, 3, 5), 2.5).is_err());
    }

    #[test]
    fn exact_eigenvalue_identity() {
        for model in signatures().map(|s| lattice_model(s).unwrap()) {
            for m in -20..=20 {
                for n in -20..=20 {
                    assert_eq!(
                        model.eigenvalue_exact(m, n),
                        Rational::from_integer(model.dual_form.eval(m, n))
                    );
                    assert!(model.is_periodic(m, n));
                }
            }
        }
    }

    #[test]
    fn half_lattice_vectors_are_not_periodic() {
        let hex = lattice_model(sig(2, 3, 6)).unwrap();
        // k = (√3/4, 1/4) is not in the dual lattice
        let k = [QSqrt3::root3(Rational::new(1, 4)), QSqrt3::rational(Rational::new(1, 4))];
        let half = QSqrt3::rational(Rational::new(1, 2));
        let t = (k[0] * hex.tau[0] + k[1] * hex.tau[1]) * half;
        assert!(!t.as_rational().unwrap().is_integer());
    }

    #[test]
    fn counting_examples() {
        let r = counting_euclidean(sig(2, 3, 6), 1000).unwrap();
        assert!((r.leading_coefficient - 2.0 * PI / (3f64.sqrt() * 6.0)).abs() < 1e-15);
        let sq = counting_euclidean(sig(2, 4, 4), 10).unwrap();
        // 1 + 1 + 1 + 0 + 1 + 2 + 0 + 0 + 1 + 1 + 2
        assert_eq!(sq.count, 10);
    }

    #[test]
    fn spectrum_support() {
        let rows = spectrum(sig(2, 4, 4), 10, false).unwrap();
        let pairs: Vec<_> = rows.iter().map(|e| (e.lambda, e.mult)).collect();
        assert_eq!(
            pairs,
            vec![(0, 1), (1, 1), (2, 1), (4, 1), (5, 2), (8, 1), (9, 1), (10, 2)]
        );
        assert_eq!(spectrum(sig(2, 4, 4), 10, true).unwrap().len(), 11);
    }
}
