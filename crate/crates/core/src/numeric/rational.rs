use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Quad3, Scalar, ScalarKind};

/// Arbitrary-precision fraction, kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// The exact dyadic value of a finite float.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(|| panic!("non-finite float {x}"))
}

/// Exact `n`-th root of a rational, when it is rational.
pub fn rational_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(q.clone());
    }
    if q.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rational_nth_root(&-q.clone(), n).map(|r| -r);
    }
    let num_root = exact_int_root(q.numer(), n)?;
    let den_root = exact_int_root(q.denom(), n)?;
    Some(Rational::new(num_root, den_root))
}

fn exact_int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    if num_traits::pow::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

impl Field for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_quad3(q: &Quad3) -> Option<Self> {
        q.as_rational().cloned()
    }

    fn from_f64(x: f64) -> Self {
        rational_from_f64(x)
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }

    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        rational_nth_root(self, n)
    }

    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Correctly handles numerators and denominators far outside the `f64` range.
pub(crate) fn ratio_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    // Shift both to ~64 significant bits before dividing.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn perfect_roots() {
        assert_eq!(rational_nth_root(&q(16, 81), 4), Some(q(2, 3)));
        assert_eq!(rational_nth_root(&q(-8, 27), 3), Some(q(-2, 3)));
        assert_eq!(rational_nth_root(&q(2, 1), 2), None);
        assert_eq!(rational_nth_root(&q(-4, 1), 2), None);
    }

    #[test]
    fn float_conversion_is_exact() {
        let x = rational_from_f64(0.1);
        assert_eq!(Field::to_f64(&x), 0.1);
        assert_ne!(x, q(1, 10));
        let huge = Rational::new(BigInt::from(1) << 2000usize, BigInt::from(3) << 1999usize);
        assert!((Field::to_f64(&huge) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn floor_of_negative_fraction() {
        assert_eq!(q(-7, 2).floor_i64(), Some(-4));
        assert_eq!(q(7, 2).floor_i64(), Some(3));
    }
}
