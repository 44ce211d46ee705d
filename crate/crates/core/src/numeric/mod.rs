//! Scalar kinds, dense linear algebra and root finding.
//!
//! Every real quantity in the crate flows through the [`Field`] trait, which
//! is implemented for three kinds:
//!
//! * [`Rational`]: arbitrary-precision fractions, always in lowest terms;
//! * [`Quad3`]: elements `a + b·√3` of the quadratic field ℚ(√3) with exact sign;
//! * `f64`: binary floating point, compared through a [`ToleranceConfig`].
//!
//! Generic code is written once over `T: Field`. The dynamically typed
//! [`Scalar`] exists for text input and output.

mod float;
mod matrix;
mod quad3;
mod rational;
mod root;
mod scalar;
mod tolerance;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use matrix::{Matrix, Vector};
pub use quad3::Quad3;
pub use rational::{rational_from_f64, rational_nth_root, Rational};
pub use root::{bisect_brackets, monotone_root, monotone_root_exact, Bracket};
pub use scalar::{Scalar, ScalarKind};
pub use tolerance::ToleranceConfig;

/// An ordered field with a decidable sign.
///
/// Exact kinds never round. For `f64` the sign is the sign of the stored
/// value; tolerance-aware decisions go through [`ToleranceConfig`].
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// `None` when the value leaves this kind (e.g. `√3` as a [`Rational`]).
    fn from_quad3(q: &Quad3) -> Option<Self>;
    /// Exact for the exact kinds: an `f64` is a dyadic rational.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// `None` for irrational values. Finite floats convert exactly.
    fn to_rational(&self) -> Option<Rational>;
    fn to_scalar(&self) -> Scalar;
    fn sign(&self) -> Ordering;
    /// The `n`-th root of a non-negative value, if the kind can represent it.
    fn nth_root(&self, n: u32) -> Option<Self>;
    /// Largest integer not exceeding the value.
    fn floor_i64(&self) -> Option<i64>;

    fn is_exact() -> bool {
        Self::KIND != ScalarKind::Float
    }

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }

    fn max_value(self, other: Self) -> Self {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    fn min_value(self, other: Self) -> Self {
        if self.cmp_value(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Integer powers of two as a field element; negative exponents allowed.
pub fn pow2<T: Field>(e: i32) -> T {
    let p = T::from_i64(2).powi(e.unsigned_abs());
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn factorial<T: Field>(n: u32) -> T {
    (1..=n as i64).fold(T::one(), |acc, k| acc * T::from_i64(k))
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn norm_sq<T: Field>(a: &[T]) -> T {
    dot(a, a)
}
