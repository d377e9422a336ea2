//! Triangle group signatures and their geometry.
//!
//! A signature `(p, q, r)` names the group `⟨α, β | α^p = β^q = (αβ)^r = e⟩`.
//! Signatures are stored sorted, so `(5, 2, 3)` and `(2, 3, 5)` are the same key.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct TriangleSignature {
    p: u64,
    q: u64,
    r: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::Spherical => "spherical",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Hyperbolic => "hyperbolic",
        })
    }
}

impl TriangleSignature {
    /// Builds a signature from three rotation orders in any order.
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        let mut v = [a, b, c];
        if let Some(&bad) = v.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidOrder(bad));
        }
        v.sort_unstable();
        Ok(TriangleSignature {
            p: v[0],
            q: v[1],
            r: v[2],
        })
    }

    /// Parses three textual orders. `inf`, `infinity` and `∞` are recognised
    /// so that the non-co-compact case gets its own error.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        let mut v = [0u64; 3];
        for (slot, s) in v.iter_mut().zip([a, b, c]) {
            *slot = parse_order(s)?;
        }
        Self::new(v[0], v[1], v[2])
    }

    /// The dihedral signature `(2, 2, n)`.
    pub fn dihedral(n: u64) -> Result<Self> {
        Self::new(2, 2, n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn orders(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }

    /// `Some(n)` when the signature is `(2, 2, n)`.
    pub fn dihedral_order(&self) -> Option<u64> {
        (self.p == 2 && self.q == 2).then_some(self.r)
    }

    pub fn geometry(&self) -> GeometryClass {
        classify(*self)
    }

    pub(crate) fn expect(&self, expected: GeometryClass) -> Result<()> {
        let found = self.geometry();
        if found == expected {
            Ok(())
        } else {
            Err(Error::WrongGeometry {
                sig: *self,
                found,
                expected,
            })
        }
    }
}

fn parse_order(s: &str) -> Result<u64> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" | "oo" => return Err(Error::NonCoCompact),
        _ => {}
    }
    let v: i128 = t.parse().map_err(|_| Error::UnparsableOrder(s.to_string()))?;
    if v < 2 {
        return Err(Error::InvalidOrder(v.max(0) as u64));
    }
    u64::try_from(v).map_err(|_| Error::UnparsableOrder(s.to_string()))
}

impl TryFrom<[u64; 3]> for TriangleSignature {
    type Error = Error;

    fn try_from(v: [u64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<TriangleSignature> for [u64; 3] {
    fn from(s: TriangleSignature) -> Self {
        s.orders()
    }
}

impl FromStr for TriangleSignature {
    type Err = Error;

    /// Accepts `2,3,5`, `(2, 3, 5)` or `2 3 5`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        match parts.as_slice() {
            [a, b, c] => Self::parse(a, b, c),
            _ => Err(Error::UnparsableOrder(s.to_string())),
        }
    }
}

impl fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({},{},{})", self.p, self.q, self.r)
    }
}

/// Sign of `1/p + 1/q + 1/r - 1`, decided in integers as `qr + pr + pq` against `pqr`.
pub fn classify(sig: TriangleSignature) -> GeometryClass {
    let (p, q, r) = (sig.p as u128, sig.q as u128, sig.r as u128);
    let lhs = q * r + p * r + p * q;
    let rhs = p * q * r;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => GeometryClass::Spherical,
        std::cmp::Ordering::Equal => GeometryClass::Euclidean,
        std::cmp::Ordering::Less => GeometryClass::Hyperbolic,
    }
}

/// Order of a spherical triangle group, `2 / (1/p + 1/q + 1/r - 1)`.
pub fn group_order(sig: TriangleSignature) -> Result<u64> {
    sig.expect(GeometryClass::Spherical)?;
    let (p, q, r) = (sig.p as u128, sig.q as u128, sig.r as u128);
    let excess = q * r + p * r + p * q - p * q * r;
    let num = 2 * p * q * r;
    debug_assert_eq!(num % excess, 0);
    Ok((num / excess) as u64)
}

/// All sorted signatures with `r <= max` of the given geometry.
pub fn enumerate(max: u64, geometry: GeometryClass) -> Vec<TriangleSignature> {
    let mut out = Vec::new();
    for p in 2..=max {
        for q in p..=max {
            for r in q..=max {
                let sig = TriangleSignature { p, q, r };
                if classify(sig) == geometry {
                    out.push(sig);
                }
            }
        }
    }
    out
}

/// An eigenvalue with its multiplicity on the quotient. For spherical groups
/// `degree_l` records the `l` with `lambda = l(l+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: u64,
    pub mult: u64,
    pub degree_l: Option<u64>,
}

impl SpectrumEntry {
    pub fn spherical(degree: u64, mult: u64) -> Self {
        SpectrumEntry {
            lambda: degree * (degree + 1),
            mult,
            degree_l: Some(degree),
        }
    }

    pub fn euclidean(lambda: u64, mult: u64) -> Self {
        SpectrumEntry {
            lambda,
            mult,
            degree_l: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, q: u64, r: u64) -> TriangleSignature {
        TriangleSignature::new(p, q, r).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(sig(2, 3, 5)), GeometryClass::Spherical);
        assert_eq!(classify(sig(2, 4, 4)), GeometryClass::Euclidean);
        assert_eq!(classify(sig(2, 3, 7)), GeometryClass::Hyperbolic);
        assert_eq!(classify(sig(4, 4, 2)), GeometryClass::Euclidean);
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(group_order(sig(2, 2, 5)).unwrap(), 10);
        assert_eq!(group_order(sig(2, 3, 3)).unwrap(), 12);
        assert_eq!(group_order(sig(2, 3, 4)).unwrap(), 24);
        assert_eq!(group_order(sig(2, 3, 5)).unwrap(), 60);
        for n in 2..=1000 {
            assert_eq!(group_order(sig(2, 2, n)).unwrap(), 2 * n);
        }
    }

    #[test]
    fn group_order_rejects_non_spherical() {
        assert!(matches!(
            group_order(sig(2, 3, 6)),
            Err(Error::WrongGeometry { .. })
        ));
        assert!(group_order(sig(2, 3, 7)).is_err());
    }

    #[test]
    fn rejects_small_orders() {
        assert_eq!(TriangleSignature::new(1, 3, 5), Err(Error::InvalidOrder(1)));
        assert_eq!(TriangleSignature::new(2, 0, 5), Err(Error::InvalidOrder(0)));
        assert!(TriangleSignature::parse("2", "-3", "5").is_err());
    }

    #[test]
    fn infinity_is_non_co_compact() {
        assert_eq!(
            TriangleSignature::parse("2", "2", "inf"),
            Err(Error::NonCoCompact)
        );
        assert_eq!(
            TriangleSignature::parse("2", "2", "∞"),
            Err(Error::NonCoCompact)
        );
    }

    #[test]
    fn canonical_sort() {
        let s = sig(5, 2, 3);
        assert_eq!(s.orders(), [2, 3, 5]);
        assert_eq!(TriangleSignature::new(2, 3, 5).unwrap(), s);
        assert_eq!("(3, 5, 2)".parse::<TriangleSignature>().unwrap(), s);
    }

    #[test]
    fn enumeration_matches_known_lists() {
        let spherical = enumerate(100, GeometryClass::Spherical);
        let mut expected: Vec<_> = (2..=100).map(|n| sig(2, 2, n)).collect();
        expected.extend([sig(2, 3, 3), sig(2, 3, 4), sig(2, 3, 5)]);
        expected.sort();
        assert_eq!(spherical, expected);

        let euclidean = enumerate(100, GeometryClass::Euclidean);
        assert_eq!(euclidean, vec![sig(2, 3, 6), sig(2, 4, 4), sig(3, 3, 3)]);
    }

    #[test]
    fn spectrum_entry_degree() {
        let e = SpectrumEntry::spherical(4, 3);
        assert_eq!(e.lambda, 20);
        assert_eq!(e.degree_l, Some(4));
    }
}
