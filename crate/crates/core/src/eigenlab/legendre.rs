//! Ferrers associated Legendre functions without the Condon–Shortley phase:
//!
//! `P_l^m(x) = (1 − x²)^{m/2} d^m/dx^m P_l(x)` for `0 <= m <= l`, and
//! `P_l^{−m} = (−1)^m (l−m)!/(l+m)! P_l^m`.
//!
//! Evaluation uses the upward three-term recurrence in `l` at fixed `m`,
//! seeded from `P_m^m = (2m−1)!! (1−x²)^{m/2}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `P_l^m(x)` for `0 <= m <= l`, `|x| <= 1`.
pub fn ferrers(l: u64, m: u64, x: f64) -> f64 {
    assert!(m <= l, "ferrers: m > l");
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = x * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let next = (x * (2 * ll - 1) as f64 * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(l−m)!/(l+m)!` for `0 <= m <= l`.
pub(crate) fn factorial_ratio(l: u64, m: u64) -> f64 {
    ((l - m + 1)..=(l + m)).fold(1.0, |acc, k| acc / k as f64)
}

/// `P_l^m(x)` for `−l <= m <= l`.
pub fn ferrers_signed(l: u64, m: i64, x: f64) -> Result<f64> {
    let am = m.unsigned_abs();
    if am > l {
        return Err(Error::OrderOutOfRange { degree: l, order: m });
    }
    let p = ferrers(l, am, x);
    if m >= 0 {
        Ok(p)
    } else {
        let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * factorial_ratio(l, am) * p)
    }
}

/// `ψ_{l,m}(θ, φ) = e^{imφ} P_l^m(cos θ)`.
pub fn sphere_basis_eval(l: u64, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    let p = ferrers_signed(l, m, theta.cos())?;
    Ok(Complex64::from_polar(p, m as f64 * phi))
}

/// All `2l+1` degree-`l` harmonics at one point, ordered `m = −l..=l`,
/// each scaled to unit `L²` norm on the sphere. Scaling a basis function
/// does not change the span, so ranks computed from these rows are ranks
/// of the Ferrers basis.
pub fn normalized_row(l: u64, theta: f64, phi: f64) -> Vec<Complex64> {
    let x = theta.cos();
    let mut row = vec![Complex64::new(0.0, 0.0); 2 * l as usize + 1];
    let base = (2 * l + 1) as f64 / (4.0 * PI);
    for m in 0..=l {
        let norm = (base * factorial_ratio(l, m)).sqrt();
        let p = norm * ferrers(l, m, x);
        let plus = Complex64::from_polar(p, m as f64 * phi);
        row[(l + m) as usize] = plus;
        if m > 0 {
            // e^{−imφ} with the same magnitude as the +m function
            row[(l - m) as usize] = plus.conj();
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_closed_forms() {
        for &x in &[-0.9, -0.3, 0.0, 0.4, 0.77, 1.0] {
            let s = (1.0f64 - x * x).sqrt();
            assert_eq!(ferrers(0, 0, x), 1.0);
            assert!((ferrers(1, 0, x) - x).abs() < 1e-15);
            assert!((ferrers(1, 1, x) - s).abs() < 1e-15);
            assert!((ferrers(2, 0, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-14);
            assert!((ferrers(2, 1, x) - 3.0 * x * s).abs() < 1e-14);
            assert!((ferrers(2, 2, x) - 3.0 * s * s).abs() < 1e-14);
            assert!((ferrers(3, 2, x) - 15.0 * x * s * s).abs() < 1e-13);
            assert!((ferrers_signed(1, -1, x).unwrap() + 0.5 * s).abs() < 1e-15);
        }
    }

    #[test]
    fn basis_examples() {
        let v = sphere_basis_eval(0, 0, 1.1, 2.2).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let th = 0.7;
        let v = sphere_basis_eval(1, 0, th, 0.3).unwrap();
        assert!((v.re - th.cos()).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!(sphere_basis_eval(2, 3, 0.1, 0.1).is_err());
        assert!(sphere_basis_eval(2, -3, 0.1, 0.1).is_err());
    }

    #[test]
    fn parity_under_reflection() {
        for l in 0..15 {
            for m in 0..=l {
                let sign = if (l + m) % 2 == 0 { 1.0 } else { -1.0 };
                for &x in &[0.1, 0.35, 0.8] {
                    let a = ferrers(l, m, -x);
                    let b = sign * ferrers(l, m, x);
                    assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
                }
            }
        }
    }

    /// Gauss–Legendre in cos θ times the trapezoid rule in φ.
    fn gram(l: u64) -> Vec<Vec<Complex64>> {
        let nodes = 2 * l as usize + 2;
        let (xs, ws) = gauss_legendre(nodes);
        let nphi = 2 * l as usize + 2;
        let dim = 2 * l as usize + 1;
        let mut g = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (x, w) in xs.iter().zip(&ws) {
            for k in 0..nphi {
                let phi = 2.0 * PI * k as f64 / nphi as f64;
                let vals: Vec<_> = (-(l as i64)..=l as i64)
                    .map(|m| sphere_basis_eval(l, m, x.acos(), phi).unwrap())
                    .collect();
                let wt = w * 2.0 * PI / nphi as f64;
                for i in 0..dim {
                    for j in 0..dim {
                        g[i][j] += vals[i].conj() * vals[j] * wt;
                    }
                }
            }
        }
        g
    }

    fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
        let mut xs = vec![0.0; n];
        let mut ws = vec![0.0; n];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let p = ferrers(n as u64, 0, x);
                let q = ferrers(n as u64 - 1, 0, x);
                let dp = n as f64 * (x * p - q) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let q = ferrers(n as u64 - 1, 0, x);
            let p = ferrers(n as u64, 0, x);
            let dp = n as f64 * (x * p - q) / (x * x - 1.0);
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        for l in [0u64, 1, 2, 5, 10, 20] {
            let g = gram(l);
            let dim = g.len();
            for i in 0..dim {
                let m = i as i64 - l as i64;
                let expected = 4.0 * PI / (2 * l + 1) as f64 / factorial_ratio(l, m.unsigned_abs())
                    * if m < 0 { factorial_ratio(l, m.unsigned_abs()).powi(2) } else { 1.0 };
                assert!((g[i][i].re - expected).abs() <= 1e-8 * expected, "l={l} m={m}");
                for j in 0..dim {
                    if i != j {
                        assert!(g[i][j].norm() <= 1e-8 * g[i][i].norm().max(g[j][j].norm()));
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_rows_match_scaled_basis() {
        let (l, th, ph) = (6u64, 1.234, -0.4);
        let row = normalized_row(l, th, ph);
        for m in -(l as i64)..=l as i64 {
            let raw = sphere_basis_eval(l, m, th, ph).unwrap();
            let ratio = row[(m + l as i64) as usize] / raw;
            // a real positive or negative scale, never complex
            assert!(ratio.im.abs() < 1e-9 * ratio.re.abs());
        }
    }
}
