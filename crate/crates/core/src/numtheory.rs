//! Exact number theory used by the multiplicity formulas: the sawtooth
//! function, divisor counts in residue classes, and brute-force
//! representation counts of binary quadratic forms.

use std::f64::consts::PI;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// `((x))`: `x - floor(x) - 1/2` off the integers and `0` on them.
pub fn sawtooth(x: Rational) -> Rational {
    if x.is_integer() {
        Rational::from_integer(0)
    } else {
        x - x.floor() - Rational::new(1, 2)
    }
}

/// Number of divisors `d | n` with `d ≡ residue (mod modulus)`.
pub fn divisor_count_mod(n: u64, residue: u64, modulus: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if modulus == 0 || residue >= modulus {
        return Err(Error::BadResidue { residue, modulus });
    }
    let mut count = 0;
    for_each_divisor(n, |d| {
        if d % modulus == residue {
            count += 1;
        }
    });
    Ok(count)
}

/// Total number of divisors of `n`.
pub fn divisor_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut count = 0;
    for_each_divisor(n, |_| count += 1);
    Ok(count)
}

fn for_each_divisor(n: u64, mut f: impl FnMut(u64)) {
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            f(d);
            let e = n / d;
            if e != d {
                f(e);
            }
        }
        d += 1;
    }
}

/// `scale · (d_{plus,modulus}(N) − d_{minus,modulus}(N))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorFormula {
    pub scale: u64,
    pub modulus: u64,
    pub plus: u64,
    pub minus: u64,
}

impl DivisorFormula {
    /// Representations by `m² + mn + n²`.
    pub const HEXAGONAL: DivisorFormula = DivisorFormula {
        scale: 6,
        modulus: 3,
        plus: 1,
        minus: 2,
    };

    /// Representations by `m² + n²`.
    pub const SQUARE: DivisorFormula = DivisorFormula {
        scale: 4,
        modulus: 4,
        plus: 1,
        minus: 3,
    };

    /// Evaluates the formula at `n >= 1`. The difference is never negative
    /// for the two formulas above; a negative value is reported as 0 only
    /// after a debug assertion.
    pub fn eval(&self, n: u64) -> Result<u64> {
        let mut plus = 0i64;
        let mut minus = 0i64;
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        for_each_divisor(n, |d| {
            let r = d % self.modulus;
            if r == self.plus {
                plus += 1;
            } else if r == self.minus {
                minus += 1;
            }
        });
        let diff = plus - minus;
        debug_assert!(diff >= 0, "negative divisor difference at {n}");
        Ok(self.scale * diff.max(0) as u64)
    }
}

/// Positive definite binary form `a m² + b m n + c n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    a: i64,
    b: i64,
    c: i64,
}

impl QuadraticForm {
    pub const HEXAGONAL: QuadraticForm = QuadraticForm { a: 1, b: 1, c: 1 };
    pub const SQUARE: QuadraticForm = QuadraticForm { a: 1, b: 0, c: 1 };

    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || 4 * a * c - b * b <= 0 {
            return Err(Error::NotPositiveDefinite { a, b, c });
        }
        Ok(QuadraticForm { a, b, c })
    }

    pub fn coefficients(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn eval(&self, m: i64, n: i64) -> i64 {
        self.a * m * m + self.b * m * n + self.c * n * n
    }

    /// Smallest eigenvalue of the symmetric matrix `[[a, b/2], [b/2, c]]`.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, b, c) = (self.a as f64, self.b as f64, self.c as f64);
        let mean = (a + c) / 2.0;
        let radius = (((a - c) / 2.0).powi(2) + b * b / 4.0).sqrt();
        mean - radius
    }

    /// Coordinate bound `B` such that `form(m, n) <= n_max` implies `|m|, |n| <= B`.
    pub fn box_bound(&self, n_max: u64) -> i64 {
        (n_max as f64 / self.min_eigenvalue()).sqrt().ceil() as i64 + 1
    }

    /// Number of `(m, n) ∈ Z²` with `form(m, n) = n_value`, by exhaustive search.
    pub fn representation_count(&self, n_value: u64) -> u64 {
        let bound = self.box_bound(n_value);
        let target = n_value as i64;
        let mut count = 0;
        for m in -bound..=bound {
            for n in -bound..=bound {
                if self.eval(m, n) == target {
                    count += 1;
                }
            }
        }
        count
    }

    /// Histogram of `form(m, n)` over the box, truncated to values `<= n_max`.
    /// Entry `k` equals `representation_count(k)`.
    pub fn representation_counts_upto(&self, n_max: u64) -> Vec<u64> {
        let bound = self.box_bound(n_max);
        let mut hist = vec![0u64; n_max as usize + 1];
        for m in -bound..=bound {
            for n in -bound..=bound {
                let v = self.eval(m, n);
                if v >= 0 && (v as u64) <= n_max {
                    hist[v as usize] += 1;
                }
            }
        }
        hist
    }

    /// All index pairs with `form(m, n) = n_value`, sorted.
    pub fn representations(&self, n_value: u64) -> Vec<(i64, i64)> {
        let bound = self.box_bound(n_value);
        let target = n_value as i64;
        let mut out = Vec::new();
        for m in -bound..=bound {
            for n in -bound..=bound {
                if self.eval(m, n) == target {
                    out.push((m, n));
                }
            }
        }
        out
    }
}

/// Precomputed tables for the finite trigonometric sum
/// `-(1/2n) Σ_{s=1}^{n-1} sin(2lsπ/n) cot(sπ/n)`.
///
/// Sine arguments are reduced mod `2n` in integers before evaluation, so
/// the sum stays accurate for large `l`.
#[derive(Debug, Clone)]
pub struct EisensteinSum {
    n: u64,
    sin_table: Vec<f64>,
    cot_table: Vec<f64>,
}

impl EisensteinSum {
    pub fn new(n: u64) -> Self {
        assert!(n >= 2, "Eisenstein sum needs n >= 2");
        let sin_table = (0..2 * n)
            .map(|k| (PI * k as f64 / n as f64).sin())
            .collect();
        let cot_table = (0..n)
            .map(|s| {
                if s == 0 {
                    0.0
                } else {
                    let t = PI * s as f64 / n as f64;
                    t.cos() / t.sin()
                }
            })
            .collect();
        EisensteinSum {
            n,
            sin_table,
            cot_table,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// The trigonometric side of the identity.
    pub fn trig_side(&self, l: u64) -> f64 {
        let n = self.n;
        let two_n = 2 * n;
        let l_red = l % n;
        let mut acc = 0.0;
        for s in 1..n {
            let k = (2 * l_red * s) % two_n;
            acc += self.sin_table[k as usize] * self.cot_table[s as usize];
        }
        -acc / (2.0 * n as f64)
    }

    /// The exact sawtooth side `((l/n))`.
    pub fn sawtooth_side(&self, l: u64) -> Rational {
        sawtooth(Rational::new(l as i64, self.n as i64))
    }

    pub fn residual(&self, l: u64) -> f64 {
        let exact = self.sawtooth_side(l);
        let exact = *exact.numer() as f64 / *exact.denom() as f64;
        (exact - self.trig_side(l)).abs()
    }
}

/// `|((l/n)) − RHS|` for the Eisenstein finite-sum identity.
pub fn eisenstein_residual(l: u64, n: u64) -> f64 {
    EisensteinSum::new(n).residual(l)
}

/// `Σ_{s=1}^{n-1} cos(2lsπ/n)`, exactly: `n − 1` when `n | l`, else `−1`.
pub fn cosine_root_sum(l: u64, n: u64) -> i64 {
    if l.is_multiple_of(n) {
        n as i64 - 1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(q(1, 3)), q(-1, 6));
        assert_eq!(sawtooth(q(2, 1)), q(0, 1));
        assert_eq!(sawtooth(q(5, 3)), q(1, 6));
        assert_eq!(sawtooth(q(-1, 3)), q(1, 6));
        assert_eq!(sawtooth(q(1, 2)), q(0, 1));
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_count_mod(7, 1, 3).unwrap(), 2);
        assert_eq!(divisor_count_mod(3, 3, 4).unwrap(), 1);
        assert_eq!(divisor_count_mod(25, 1, 4).unwrap(), 3);
        assert_eq!(divisor_count(36).unwrap(), 9);
    }

    #[test]
    fn divisor_errors() {
        assert_eq!(divisor_count_mod(0, 1, 3), Err(Error::ZeroArgument));
        assert!(matches!(
            divisor_count_mod(5, 3, 3),
            Err(Error::BadResidue { .. })
        ));
    }

    #[test]
    fn representation_examples() {
        assert_eq!(QuadraticForm::HEXAGONAL.representation_count(7), 12);
        assert_eq!(QuadraticForm::SQUARE.representation_count(5), 8);
        assert_eq!(QuadraticForm::HEXAGONAL.representation_count(2), 0);
        assert_eq!(QuadraticForm::HEXAGONAL.representation_count(0), 1);
    }

    #[test]
    fn histogram_agrees_with_pointwise_count() {
        let f = QuadraticForm::new(2, 1, 3).unwrap();
        let hist = f.representation_counts_upto(300);
        for (k, &h) in hist.iter().enumerate() {
            assert_eq!(h, f.representation_count(k as u64), "k = {k}");
        }
    }

    #[test]
    fn rejects_indefinite_forms() {
        assert!(QuadraticForm::new(1, 2, 1).is_err());
        assert!(QuadraticForm::new(1, 3, 1).is_err());
        assert!(QuadraticForm::new(-1, 0, -1).is_err());
    }

    #[test]
    fn eisenstein_examples() {
        assert!(eisenstein_residual(1, 2) < 1e-12);
        let t = EisensteinSum::new(2);
        assert!(t.trig_side(1).abs() < 1e-12);
        for n in 2..30 {
            for k in 0..5 {
                assert!(eisenstein_residual(k * n, n) < 1e-12);
                assert!(EisensteinSum::new(n).trig_side(k * n).abs() < 1e-12);
            }
        }
        let t3 = EisensteinSum::new(3);
        assert!((t3.trig_side(1) + 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(t3.sawtooth_side(1), q(-1, 6));
    }

    #[test]
    fn cosine_sum_matches_floating_point() {
        for n in 2..20u64 {
            for l in 0..50u64 {
                let direct: f64 = (1..n)
                    .map(|s| (2.0 * PI * (l * s) as f64 / n as f64).cos())
                    .sum();
                assert!((direct - cosine_root_sum(l, n) as f64).abs() < 1e-9);
            }
        }
    }
}
