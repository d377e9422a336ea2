use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::numtheory::Rational;

/// Exact number `a + b·√3` with rational `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub const ZERO: QSqrt3 = QSqrt3 {
        a: Rational::new_raw(0, 1),
        b: Rational::new_raw(0, 1),
    };

    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QSqrt3 {
            a,
            b: Rational::from_integer(0),
        }
    }

    pub fn integer(a: i64) -> Self {
        Self::rational(Rational::from_integer(a))
    }

    /// `b·√3`.
    pub fn root3(b: Rational) -> Self {
        QSqrt3 {
            a: Rational::from_integer(0),
            b,
        }
    }

    /// `c / √3 = (c/3)·√3`.
    pub fn over_root3(c: Rational) -> Self {
        Self::root3(c / Rational::from_integer(3))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.b == Rational::from_integer(0)).then_some(self.a)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        f(self.a) + f(self.b) * 3f64.sqrt()
    }
}

impl Add for QSqrt3 {
    type Output = QSqrt3;
    fn add(self, o: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, o: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-self.a, -self.b)
    }
}

impl Mul for QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, o: QSqrt3) -> QSqrt3 {
        let three = Rational::from_integer(3);
        QSqrt3::new(
            self.a * o.a + three * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational::from_integer(0);
        match (self.a == zero, self.b == zero) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√3", self.b),
            (false, false) => write!(f, "{} + {}√3", self.a, self.b),
        }
    }
}
