//! Generators of the euclidean triangle groups as plane isometries.
//!
//! Words are read as right actions: in `αβ` the map `α` acts first. With
//! that reading `γ = αβ` is the counter-clockwise rotation by `2π/|S|`
//! about the origin, and `α` is a rotation about a center solved so that
//! the translation words produce the lattice generators `tau` and `sigma`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, SMatrix, SVector, Vector2};
use serde::{Deserialize, Serialize};

use super::lattice_model;
use crate::error::{Error, Result};
use crate::numtheory::Rational;
use crate::signature::TriangleSignature;

const TOL: f64 = 1e-9;

/// `z ↦ R z + t`, with `R` the rotation by `turn · 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineIsometry {
    pub turn: Rational,
    pub translation: Vector2<f64>,
}

impl AffineIsometry {
    pub fn identity() -> Self {
        Self::translation(Vector2::zeros())
    }

    pub fn translation(t: Vector2<f64>) -> Self {
        AffineIsometry {
            turn: Rational::from_integer(0),
            translation: t,
        }
    }

    /// Rotation by `turn · 2π` fixing `center`.
    pub fn rotation_about(turn: Rational, center: Vector2<f64>) -> Self {
        let turn = turn - turn.floor();
        let r = rotation_matrix(turn);
        AffineIsometry {
            turn,
            translation: center - r * center,
        }
    }

    pub fn rotation(&self) -> Matrix2<f64> {
        rotation_matrix(self.turn)
    }

    pub fn apply(&self, z: Vector2<f64>) -> Vector2<f64> {
        self.rotation() * z + self.translation
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn after(&self, other: &AffineIsometry) -> AffineIsometry {
        let turn = self.turn + other.turn;
        AffineIsometry {
            turn: turn - turn.floor(),
            translation: self.rotation() * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> AffineIsometry {
        let turn = -self.turn;
        let turn = turn - turn.floor();
        let r_inv = rotation_matrix(turn);
        AffineIsometry {
            turn,
            translation: -(r_inv * self.translation),
        }
    }

    pub fn power(&self, k: u64) -> AffineIsometry {
        (0..k).fold(Self::identity(), |acc, _| self.after(&acc))
    }

    /// Distance used for relation checks: angular mismatch (radians, wrapped)
    /// or translation mismatch, whichever is larger.
    pub fn distance(&self, other: &AffineIsometry) -> f64 {
        let dt = self.turn - other.turn;
        let dt = dt - dt.round();
        let angle = 2.0 * PI * (*dt.numer() as f64 / *dt.denom() as f64);
        let trans = (self.translation - other.translation).amax();
        angle.abs().max(trans)
    }
}

fn rotation_matrix(turn: Rational) -> Matrix2<f64> {
    // exact entries on the quarter turns keep tolerances honest
    let t = turn - turn.floor();
    let (c, s) = match (*t.numer(), *t.denom()) {
        (0, _) => (1.0, 0.0),
        (1, 4) => (0.0, 1.0),
        (1, 2) => (-1.0, 0.0),
        (3, 4) => (0.0, -1.0),
        (n, d) => {
            let a = 2.0 * PI * n as f64 / d as f64;
            (a.cos(), a.sin())
        }
    };
    Matrix2::new(c, -s, s, c)
}

/// A word in `a`, `b` and their inverses `A`, `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word(pub String);

impl Word {
    pub fn new(s: &str) -> Self {
        assert!(
            s.chars().all(|c| matches!(c, 'a' | 'b' | 'A' | 'B')),
            "word letters are a, b, A, B"
        );
        Word(s.to_string())
    }

    /// Evaluates with the leftmost letter acting first.
    pub fn evaluate(&self, alpha: &AffineIsometry, beta: &AffineIsometry) -> AffineIsometry {
        let (alpha_inv, beta_inv) = (alpha.inverse(), beta.inverse());
        self.0.chars().fold(AffineIsometry::identity(), |acc, c| {
            let x = match c {
                'a' => alpha,
                'b' => beta,
                'A' => &alpha_inv,
                _ => &beta_inv,
            };
            x.after(&acc)
        })
    }

    /// Human form, e.g. `ababa` → `αβαβα`.
    pub fn pretty(&self) -> String {
        self.0
            .chars()
            .map(|c| match c {
                'a' => "α",
                'b' => "β",
                'A' => "α⁻¹",
                _ => "β⁻¹",
            })
            .collect()
    }
}

/// A named identity and how far the realized maps are from satisfying it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
}

impl RelationCheck {
    fn new(name: impl Into<String>, residual: f64) -> Self {
        RelationCheck {
            name: name.into(),
            residual,
            passed: residual <= TOL,
        }
    }
}

/// Translation word data for one group: words for `tau` and `sigma`, and
/// the four conjugation identities `g x g⁻¹ = tau^i sigma^j`.
struct GroupWords {
    tau: &'static str,
    sigma: &'static str,
    conjugations: [(char, char, (i64, i64)); 4],
}

fn group_words(sig: TriangleSignature) -> GroupWords {
    match sig.orders() {
        [2, 3, 6] => GroupWords {
            tau: "abababa",
            sigma: "ababb",
            conjugations: [
                ('a', 't', (-1, 0)),
                ('b', 't', (-1, 1)),
                ('a', 's', (0, -1)),
                ('b', 's', (-1, 0)),
            ],
        },
        [2, 4, 4] => GroupWords {
            tau: "bba",
            sigma: "ababa",
            conjugations: [
                ('a', 't', (-1, 0)),
                ('b', 't', (0, 1)),
                ('a', 's', (0, -1)),
                ('b', 's', (-1, 0)),
            ],
        },
        [3, 3, 3] => GroupWords {
            tau: "bba",
            sigma: "aba",
            conjugations: [
                ('a', 't', (-1, 1)),
                ('b', 't', (-1, 1)),
                ('a', 's', (-1, 0)),
                ('b', 's', (-1, 0)),
            ],
        },
        _ => unreachable!("not a euclidean signature"),
    }
}

fn translation_name(i: i64, j: i64) -> String {
    let part = |sym: &str, k: i64| match k {
        0 => String::new(),
        1 => sym.to_string(),
        -1 => format!("{sym}⁻¹"),
        k => format!("{sym}^{k}"),
    };
    let s = format!("{}{}", part("τ", i), part("σ", j));
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Realized `α`, `β` for a euclidean group with every relation checked.
#[derive(Debug, Clone)]
pub struct AffineRealization {
    pub signature: TriangleSignature,
    pub alpha: AffineIsometry,
    pub beta: AffineIsometry,
    pub gamma: AffineIsometry,
    pub alpha_center: Vector2<f64>,
    pub tau: Vector2<f64>,
    pub sigma: Vector2<f64>,
    pub tau_word: Word,
    pub sigma_word: Word,
    pub checks: Vec<RelationCheck>,
}

impl AffineRealization {
    /// Builds the generators and evaluates every relation without failing
    /// on residuals.
    pub fn build(sig: TriangleSignature) -> Result<Self> {
        let model = lattice_model(sig)?;
        let [p, q, r] = sig.orders();
        let words = group_words(sig);
        let tau_word = Word::new(words.tau);
        let sigma_word = Word::new(words.sigma);
        let tau = Vector2::from(model.tau_vector());
        let sigma = Vector2::from(model.sigma_vector());
        let gamma = AffineIsometry::rotation_about(
            Rational::new(1, model.quotient_order as i64),
            Vector2::zeros(),
        );

        let generators = |sense: i64, center: Vector2<f64>| {
            let alpha = AffineIsometry::rotation_about(Rational::new(sense, p as i64), center);
            // αβ = γ with α acting first, so β = γ ∘ α⁻¹
            let beta = gamma.after(&alpha.inverse());
            (alpha, beta)
        };
        let word_translations = |sense: i64, center: Vector2<f64>| {
            let (alpha, beta) = generators(sense, center);
            let t = tau_word.evaluate(&alpha, &beta).translation;
            let s = sigma_word.evaluate(&alpha, &beta).translation;
            SVector::<f64, 4>::new(t.x, t.y, s.x, s.y)
        };
        let target = SVector::<f64, 4>::new(tau.x, tau.y, sigma.x, sigma.y);

        // The word translations are affine in the center; solve by least squares.
        let mut best: Option<(f64, i64, Vector2<f64>)> = None;
        for sense in [1, -1] {
            let base = word_translations(sense, Vector2::zeros());
            let jx = word_translations(sense, Vector2::x()) - base;
            let jy = word_translations(sense, Vector2::y()) - base;
            let jac = SMatrix::<f64, 4, 2>::from_columns(&[jx, jy]);
            let Some(normal_inv) = (jac.transpose() * jac).try_inverse() else {
                continue;
            };
            let center = normal_inv * jac.transpose() * (target - base);
            let residual = (word_translations(sense, center) - target).amax();
            if best.is_none_or(|(r, _, _)| residual < r) {
                best = Some((residual, sense, center));
            }
        }
        let (_, sense, alpha_center) = best.ok_or_else(|| Error::RelationFailed {
            name: "translation words determine the center of α".into(),
            residual: f64::INFINITY,
        })?;
        let (alpha, beta) = generators(sense, alpha_center);

        let identity = AffineIsometry::identity();
        let t_map = AffineIsometry::translation(tau);
        let s_map = AffineIsometry::translation(sigma);
        let ab = Word::new("ab").evaluate(&alpha, &beta);
        let mut checks = vec![
            RelationCheck::new(format!("α^{p} = e"), alpha.power(p).distance(&identity)),
            RelationCheck::new(format!("β^{q} = e"), beta.power(q).distance(&identity)),
            RelationCheck::new(format!("(αβ)^{r} = e"), ab.power(r).distance(&identity)),
            RelationCheck::new(
                format!("τ = {} is translation by tau", tau_word.pretty()),
                tau_word.evaluate(&alpha, &beta).distance(&t_map),
            ),
            RelationCheck::new(
                format!("σ = {} is translation by sigma", sigma_word.pretty()),
                sigma_word.evaluate(&alpha, &beta).distance(&s_map),
            ),
        ];
        for (g, x, (i, j)) in words.conjugations {
            let (g_map, g_name) = if g == 'a' { (&alpha, "α") } else { (&beta, "β") };
            let (x_map, x_name) = if x == 't' { (&t_map, "τ") } else { (&s_map, "σ") };
            // g x g⁻¹ with g acting first
            let lhs = g_map.inverse().after(&x_map.after(g_map));
            let rhs = AffineIsometry::translation(tau * i as f64 + sigma * j as f64);
            checks.push(RelationCheck::new(
                format!("{g_name}{x_name}{g_name}⁻¹ = {}", translation_name(i, j)),
                lhs.distance(&rhs),
            ));
        }

        Ok(AffineRealization {
            signature: sig,
            alpha,
            beta,
            gamma,
            alpha_center,
            tau,
            sigma,
            tau_word,
            sigma_word,
            checks,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Builds `α`, `β` and fails on the first relation outside tolerance.
pub fn realize_generators_affine(sig: TriangleSignature) -> Result<AffineRealization> {
    let real = AffineRealization::build(sig)?;
    if let Some(bad) = real.checks.iter().find(|c| !c.passed) {
        return Err(Error::RelationFailed {
            name: bad.name.clone(),
            residual: bad.residual,
        });
    }
    Ok(real)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, q: u64, r: u64) -> TriangleSignature {
        TriangleSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn composition_and_inverse() {
        let g = AffineIsometry::rotation_about(Rational::new(1, 6), Vector2::new(1.0, 2.0));
        let h = AffineIsometry::rotation_about(Rational::new(1, 4), Vector2::new(-3.0, 0.5));
        let k = AffineIsometry::translation(Vector2::new(0.3, -0.7));
        assert!(g.after(&g.inverse()).distance(&AffineIsometry::identity()) < 1e-12);
        let left = g.after(&h).after(&k);
        let right = g.after(&h.after(&k));
        assert!(left.distance(&right) < 1e-12);
        let z = Vector2::new(0.25, 4.0);
        assert!((g.after(&h).apply(z) - g.apply(h.apply(z))).amax() < 1e-12);
        assert!((g.power(6).distance(&AffineIsometry::identity())) < 1e-12);
        assert!((g.rotation().determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_tau_word() {
        let r = realize_generators_affine(sig(2, 3, 6)).unwrap();
        let tau = r.tau_word.evaluate(&r.alpha, &r.beta);
        assert_eq!(tau.turn, Rational::from_integer(0));
        assert!((tau.translation - Vector2::new(4.0 * PI / 3f64.sqrt(), 0.0)).amax() < 1e-9);
        assert!((r.alpha_center - Vector2::new(2.0 * PI / 3f64.sqrt(), 0.0)).amax() < 1e-9);
        assert!(r.checks.iter().any(|c| c.name == "ατα⁻¹ = τ⁻¹" && c.passed));
    }

    #[test]
    fn triangular_conjugation() {
        let r = realize_generators_affine(sig(3, 3, 3)).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "ασα⁻¹ = τ⁻¹" && c.passed));
        assert_eq!(r.checks.len(), 9);
    }

    #[test]
    fn all_groups_pass() {
        for s in crate::euclidean::signatures() {
            let r = AffineRealization::build(s).unwrap();
            for c in &r.checks {
                assert!(c.passed, "{s}: {} residual {}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn wrong_word_is_detected() {
        let r = realize_generators_affine(sig(2, 4, 4)).unwrap();
        // αβα is not a translation in Γ(2,4,4)
        let w = Word::new("aba").evaluate(&r.alpha, &r.beta);
        assert!(w.distance(&AffineIsometry::translation(r.tau)) > 1e-3);
    }
}
