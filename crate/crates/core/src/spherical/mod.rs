//! Spectra of the spherical triangle groups.
//!
//! The sphere's `λ_l = l(l+1)` eigenspace has dimension `2l+1`. Averaging over
//! a finite rotation group projects onto the invariant part, whose dimension
//! is the orbifold multiplicity. The trace of that projection is computed
//! here from the group's rotation angles (`character_trace`) and compared
//! with the closed forms in `multiplicity_closed`.

mod rotation;

use std::f64::consts::PI;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{cosine_root_sum, sawtooth, Rational};
use crate::signature::{group_order, GeometryClass, SpectrumEntry, TriangleSignature};

pub use rotation::{census_from_matrices, generate_rotation_group, RotationGroupRealization};

/// One conjugacy-angle bucket: `count` elements rotating by `turn · 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Rotation angle as a fraction of a full turn, in `[0, 1)`.
    pub turn: Rational,
    pub count: u64,
}

impl CensusEntry {
    pub fn angle(&self) -> f64 {
        2.0 * PI * (*self.turn.numer() as f64) / (*self.turn.denom() as f64)
    }
}

/// Rotation angles of a spherical group with their element counts,
/// sorted by angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleCensus {
    pub entries: Vec<CensusEntry>,
}

impl AngleCensus {
    fn from_pairs(pairs: impl IntoIterator<Item = (Rational, u64)>) -> Self {
        let mut entries: Vec<CensusEntry> = Vec::new();
        for (turn, count) in pairs {
            let turn = turn - turn.floor();
            match entries.iter_mut().find(|e| e.turn == turn) {
                Some(e) => e.count += count,
                None => entries.push(CensusEntry { turn, count }),
            }
        }
        entries.sort_by_key(|a| a.turn);
        AngleCensus { entries }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    pub fn count_at(&self, turn: Rational) -> u64 {
        self.entries
            .iter()
            .find(|e| e.turn == turn)
            .map_or(0, |e| e.count)
    }
}

fn turn(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Rotation angles of the group, one bucket per angle. Every nontrivial
/// power of every rotation axis is listed at its own angle, so the
/// weighted character sum reproduces the trace formula term by term.
pub fn angle_census(sig: TriangleSignature) -> Result<AngleCensus> {
    sig.expect(GeometryClass::Spherical)?;
    let identity = (turn(0, 1), 1);
    let half = turn(1, 2);
    let census = match sig.orders() {
        [2, 2, n] => {
            let n = n as i64;
            AngleCensus::from_pairs(
                std::iter::once(identity)
                    .chain((1..n).map(|s| (turn(s, n), 1)))
                    .chain(std::iter::once((half, n as u64))),
            )
        }
        // tetrahedral: 3 two-fold axes, 4 three-fold axes
        [2, 3, 3] => AngleCensus::from_pairs([
            identity,
            (half, 3),
            (turn(1, 3), 4),
            (turn(2, 3), 4),
        ]),
        // octahedral: 6 edge two-fold axes, 4 three-fold axes, 3 four-fold axes
        [2, 3, 4] => AngleCensus::from_pairs([
            identity,
            (half, 6),
            (turn(1, 3), 4),
            (turn(2, 3), 4),
            (turn(1, 4), 3),
            (turn(2, 4), 3),
            (turn(3, 4), 3),
        ]),
        // icosahedral: 15 two-fold, 10 three-fold, 6 five-fold axes
        [2, 3, 5] => AngleCensus::from_pairs(
            [identity, (half, 15), (turn(1, 3), 10), (turn(2, 3), 10)]
                .into_iter()
                .chain((1..5).map(|s| (turn(s, 5), 6))),
        ),
        _ => unreachable!("{sig} classified spherical but is not in the known list"),
    };
    debug_assert_eq!(census.total(), group_order(sig)?);
    Ok(census)
}

/// Character of a rotation by `turn · 2π` on the degree-`l` harmonics,
/// `sin((l + 1/2)χ) / sin(χ/2)`, with value `2l + 1` at the identity.
pub fn character_trace(l: u64, turn: Rational) -> f64 {
    let turn = turn - turn.floor();
    if turn.numer() == &0 {
        return (2 * l + 1) as f64;
    }
    // χ = 2π a/b, so (l + 1/2)χ = (2l+1)·π·a/b and χ/2 = π·a/b.
    let a = *turn.numer() as i128;
    let b = *turn.denom() as i128;
    let k = ((2 * l as i128 + 1) * a).rem_euclid(2 * b);
    let num = (PI * k as f64 / b as f64).sin();
    let den = (PI * a as f64 / b as f64).sin();
    num / den
}

/// Same character for an arbitrary real angle `chi` (radians).
pub fn character_trace_angle(l: u64, chi: f64) -> f64 {
    let half = 0.5 * chi;
    // limit at χ ∈ 2πZ
    if half.sin().abs() < 1e-12 {
        return (2 * l + 1) as f64;
    }
    ((l as f64 + 0.5) * chi).sin() / half.sin()
}

/// Pre-rounding value of the averaged character sum.
pub fn charsum_value(sig: TriangleSignature, l: u64) -> Result<f64> {
    let census = angle_census(sig)?;
    Ok(charsum_from_census(&census, l))
}

fn charsum_from_census(census: &AngleCensus, l: u64) -> f64 {
    let total = census.total() as f64;
    census
        .entries
        .iter()
        .map(|e| e.count as f64 * character_trace(l, e.turn))
        .sum::<f64>()
        / total
}

/// Multiplicity of `λ_l` as the trace of the averaging projection.
pub fn multiplicity_charsum(sig: TriangleSignature, l: u64) -> Result<u64> {
    let census = angle_census(sig)?;
    multiplicity_charsum_with(&census, sig, l)
}

/// As [`multiplicity_charsum`] with a precomputed census, for sweeps.
pub fn multiplicity_charsum_with(
    census: &AngleCensus,
    sig: TriangleSignature,
    l: u64,
) -> Result<u64> {
    let value = charsum_from_census(census, l);
    let rounded = value.round();
    if (value - rounded).abs() >= 1e-6 || rounded < 0.0 {
        return Err(Error::NonIntegralTrace {
            sig,
            degree: l,
            value,
        });
    }
    Ok(rounded as u64)
}

/// Closed-form multiplicity of `λ_l`, in integer arithmetic.
///
/// * `(2,2,n)`: `⌊l/n⌋ + (1 + (−1)^l)/2`
/// * `(2,3,3)`: `2⌊l/3⌋ + (3 + (−1)^l − 2l)/4`
/// * `(2,3,4)`: `⌊l/3⌋ + ⌊l/4⌋ + (3 + (−1)^l − 2l)/4`
/// * `(2,3,5)`: `⌊l/3⌋ + ⌊l/5⌋ + (3 + (−1)^l − 2l)/4`
pub fn multiplicity_closed(sig: TriangleSignature, l: u64) -> Result<u64> {
    sig.expect(GeometryClass::Spherical)?;
    let li = l as i64;
    let parity = if l.is_multiple_of(2) { 1 } else { -1 };
    // 3 + (−1)^l − 2l is always divisible by 4.
    let tail = (3 + parity - 2 * li) / 4;
    let value = match sig.orders() {
        [2, 2, n] => li / n as i64 + (1 + parity) / 2,
        [2, 3, 3] => 2 * (li / 3) + tail,
        [2, 3, 4] => li / 3 + li / 4 + tail,
        [2, 3, 5] => li / 3 + li / 5 + tail,
        _ => unreachable!(),
    };
    debug_assert!(value >= 0);
    Ok(value as u64)
}

/// Dihedral multiplicity routed through the Eisenstein identity: the
/// trigonometric sum `Σ sin((2l+1)sπ/n)/sin(sπ/n)` is rewritten as
/// `−2n((l/n)) + Σ cos(2lsπ/n)` and evaluated exactly.
pub fn dihedral_multiplicity_eisenstein(n: u64, l: u64) -> Rational {
    let n_i = n as i64;
    let parity = if l.is_multiple_of(2) { 1 } else { -1 };
    let trig = Rational::from_integer(-2 * n_i) * sawtooth(Rational::new(l as i64, n_i))
        + Rational::from_integer(cosine_root_sum(l, n));
    (Rational::from_integer(2 * l as i64 + 1 + parity * n_i) + trig) / Rational::from_integer(2 * n_i)
}

/// Dihedral multiplicity from the raw trigonometric form of the trace,
/// `(1/2n)(2l + 1 + (−1)^l n + Σ_{s=1}^{n−1} sin((2l+1)sπ/n)/sin(sπ/n))`.
pub fn dihedral_charsum_display(n: u64, l: u64) -> f64 {
    let parity = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut acc = (2 * l + 1) as f64 + parity * n as f64;
    for s in 1..n {
        acc += character_trace(l, Rational::new(s as i64, n as i64));
    }
    acc / (2 * n) as f64
}

/// `N(L) = Σ_{l=0}^{L} μ(λ_l)`.
pub fn counting_spherical(sig: TriangleSignature, max_degree: u64) -> Result<u64> {
    sig.expect(GeometryClass::Spherical)?;
    let mut total = 0;
    for l in 0..=max_degree {
        total += multiplicity_closed(sig, l)?;
    }
    Ok(total)
}

/// Leading Weyl term `(L + 1)² / |Γ|`.
pub fn weyl_leading_spherical(sig: TriangleSignature, max_degree: u64) -> Result<f64> {
    let order = group_order(sig)?;
    Ok(((max_degree + 1) as f64).powi(2) / order as f64)
}

/// Largest degree `l` with `l(l+1) <= lambda`.
pub fn degree_below(lambda: u64) -> u64 {
    let mut l = ((lambda as f64).sqrt() as u64).saturating_sub(1);
    while (l + 1) * (l + 2) <= lambda {
        l += 1;
    }
    l
}

/// The `l` with `l(l+1) = lambda`, if there is one.
pub fn degree_of(lambda: u64) -> Option<u64> {
    let l = degree_below(lambda);
    (l * (l + 1) == lambda).then_some(l)
}

/// Spectrum entries for degrees `0..=max_degree`.
pub fn spectrum_by_degree(
    sig: TriangleSignature,
    max_degree: u64,
    include_zeros: bool,
) -> Result<Vec<SpectrumEntry>> {
    let mut out = Vec::new();
    for l in 0..=max_degree {
        let mult = multiplicity_closed(sig, l)?;
        if include_zeros || mult > 0 {
            out.push(SpectrumEntry::spherical(l, mult));
        }
    }
    Ok(out)
}

/// `Σ_{l=0}^{L} (remainder)` tracker for the Weyl boundedness check: returns
/// the maximum of `|N(L) − (L+1)²/|Γ||` over `L <= short` and over `L <= long`.
pub fn weyl_remainder_maxima(sig: TriangleSignature, short: u64, long: u64) -> Result<(f64, f64)> {
    let order = group_order(sig)? as f64;
    let mut count = 0u64;
    let mut short_max = 0.0f64;
    let mut long_max = 0.0f64;
    for l in 0..=long.max(short) {
        count += multiplicity_closed(sig, l)?;
        let rem = (count as f64 - ((l + 1) as f64).powi(2) / order).abs();
        if l <= short {
            short_max = short_max.max(rem);
        }
        if l <= long {
            long_max = long_max.max(rem);
        }
    }
    Ok((short_max, long_max))
}

/// Every spherical signature used by the sweeps: `(2,2,n)` for
/// `2 <= n <= max_n` plus the three polyhedral groups.
pub fn sweep_signatures(max_n: u64) -> Vec<TriangleSignature> {
    let mut v: Vec<_> = (2..=max_n)
        .map(|n| TriangleSignature::dihedral(n).expect("n >= 2"))
        .collect();
    for r in 3..=5 {
        v.push(TriangleSignature::new(2, 3, r).expect("valid"));
    }
    v
}

/// Least common multiple of the rotation orders; every census denominator divides it.
pub(crate) fn angle_denominator_bound(sig: TriangleSignature) -> u64 {
    sig.orders().iter().fold(1, |acc, &x| acc.lcm(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, q: u64, r: u64) -> TriangleSignature {
        TriangleSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn census_examples() {
        let t = angle_census(sig(2, 3, 3)).unwrap();
        assert_eq!(t.total(), 12);
        assert_eq!(t.count_at(turn(1, 2)), 3);

        let o = angle_census(sig(2, 3, 4)).unwrap();
        assert_eq!(o.count_at(turn(1, 4)), 3);
        assert_eq!(o.count_at(turn(3, 4)), 3);
        assert_eq!(o.count_at(turn(1, 2)), 9);

        let d4 = angle_census(sig(2, 2, 4)).unwrap();
        assert_eq!(
            d4.entries,
            vec![
                CensusEntry { turn: turn(0, 1), count: 1 },
                CensusEntry { turn: turn(1, 4), count: 1 },
                CensusEntry { turn: turn(1, 2), count: 5 },
                CensusEntry { turn: turn(3, 4), count: 1 },
            ]
        );

        let i = angle_census(sig(2, 3, 5)).unwrap();
        assert_eq!(i.total(), 60);
        assert_eq!(i.count_at(turn(2, 5)), 6);
    }

    #[test]
    fn census_rejects_euclidean() {
        assert!(angle_census(sig(2, 3, 6)).is_err());
    }

    #[test]
    fn character_examples() {
        for l in 0..20 {
            assert_eq!(character_trace(l, turn(0, 1)), (2 * l + 1) as f64);
            let at_pi = character_trace(l, turn(1, 2));
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((at_pi - sign).abs() < 1e-12);
        }
        assert!((character_trace(2, turn(1, 2)) - 1.0).abs() < 1e-12);
        assert!(character_trace(1, turn(1, 3)).abs() < 1e-12);
    }

    #[test]
    fn character_matches_real_angle_version() {
        for l in 0..15 {
            for s in 1..7 {
                let t = turn(s, 7);
                let chi = 2.0 * PI * s as f64 / 7.0;
                assert!((character_trace(l, t) - character_trace_angle(l, chi)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn charsum_examples() {
        assert_eq!(multiplicity_charsum(sig(2, 3, 3), 3).unwrap(), 1);
        assert_eq!(multiplicity_charsum(sig(2, 3, 5), 1).unwrap(), 0);
        assert_eq!(multiplicity_charsum(sig(2, 2, 2), 2).unwrap(), 2);
    }

    #[test]
    fn closed_examples() {
        assert_eq!(multiplicity_closed(sig(2, 3, 5), 0).unwrap(), 1);
        assert_eq!(multiplicity_closed(sig(2, 3, 4), 9).unwrap(), 1);
        assert_eq!(multiplicity_closed(sig(2, 2, 3), 3).unwrap(), 1);
        assert_eq!(multiplicity_closed(sig(2, 3, 3), 3).unwrap(), 1);
        assert_eq!(multiplicity_closed(sig(2, 3, 5), 6).unwrap(), 1);
        assert_eq!(multiplicity_closed(sig(2, 3, 5), 15).unwrap(), 1);
    }

    #[test]
    fn closed_matches_charsum_small_sweep() {
        for s in sweep_signatures(12) {
            let census = angle_census(s).unwrap();
            for l in 0..=300 {
                assert_eq!(
                    multiplicity_charsum_with(&census, s, l).unwrap(),
                    multiplicity_closed(s, l).unwrap(),
                    "{s} l={l}"
                );
            }
        }
    }

    #[test]
    fn eisenstein_route_matches_closed_form() {
        for n in 2..=20 {
            let s = sig(2, 2, n);
            for l in 0..200 {
                let exact = dihedral_multiplicity_eisenstein(n, l);
                assert!(exact.is_integer());
                assert_eq!(*exact.numer() as u64, multiplicity_closed(s, l).unwrap());
                assert!((dihedral_charsum_display(n, l) - exact.to_integer() as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(counting_spherical(sig(2, 2, 2), 4).unwrap(), 7);
        let (short, long) = weyl_remainder_maxima(sig(2, 3, 3), 200, 2000).unwrap();
        assert!(long <= short + 1.0);
    }

    #[test]
    fn degree_helpers() {
        assert_eq!(degree_below(0), 0);
        assert_eq!(degree_below(1), 0);
        assert_eq!(degree_below(2), 1);
        assert_eq!(degree_below(5), 1);
        assert_eq!(degree_below(6), 2);
        assert_eq!(degree_of(20), Some(4));
        assert_eq!(degree_of(21), None);
        for l in 0..2000u64 {
            assert_eq!(degree_of(l * (l + 1)), Some(l));
            assert_eq!(degree_below(l * (l + 1) + 2 * l + 1), l);
        }
    }
}
