use std::cmp::Ordering;

use super::{Field, Quad3, Rational, Scalar, ScalarKind};

impl Field for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64()
    }

    fn from_quad3(q: &Quad3) -> Option<Self> {
        Some(q.to_f64())
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }

    fn sign(&self) -> Ordering {
        self.partial_cmp(&0.0).expect("NaN has no sign")
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        match n {
            0 => None,
            1 => Some(*self),
            2 => (*self >= 0.0).then(|| self.sqrt()),
            3 => Some(self.cbrt()),
            _ if *self >= 0.0 => Some(self.powf(1.0 / n as f64)),
            _ if n % 2 == 1 => Some(-(-self).powf(1.0 / n as f64)),
            _ => None,
        }
    }

    fn floor_i64(&self) -> Option<i64> {
        let f = self.floor();
        (f.is_finite() && f.abs() < 9.2e18).then_some(f as i64)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("NaN comparison")
    }

    fn powi(&self, n: u32) -> Self {
        f64::powi(*self, n as i32)
    }
}
