use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{factorial, norm_sq, pow2, Field, Rational};

/// `coeff · √radicand` with both parts non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledRoot<T> {
    pub coeff: T,
    pub radicand: T,
}

impl<T: Field> ScaledRoot<T> {
    pub fn new(coeff: T, radicand: T) -> Self {
        ScaledRoot { coeff, radicand }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * self.radicand.to_f64().sqrt()
    }

    /// `coeff² · radicand`, exact in `T`.
    pub fn square(&self) -> T {
        self.coeff.clone() * self.coeff.clone() * self.radicand.clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        ScaledRoot { coeff: self.coeff.clone() * s.clone(), radicand: self.radicand.clone() }
    }

    /// The value as an element of `T`, when `√radicand` lies in `T`.
    pub fn to_field(&self) -> Option<T> {
        if !T::is_exact() {
            return Some(T::from_f64(self.to_f64()));
        }
        self.radicand.nth_root(2).map(|r| self.coeff.clone() * r)
    }

    /// Exact comparison of two non-negative values through their squares.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.square().cmp_value(&other.square())
    }
}

impl ScaledRoot<Rational> {
    /// Moves square factors out of the radicand so that it is a square-free integer.
    pub fn simplified(&self) -> Self {
        if Field::is_zero(&self.radicand) || Field::is_zero(&self.coeff) {
            return ScaledRoot { coeff: <Rational as Field>::zero(), radicand: <Rational as Field>::one() };
        }
        // √(p/q) = √(pq) / q
        let q = self.radicand.denom().clone();
        let mut n: BigInt = self.radicand.numer() * &q;
        let mut out = Rational::new(BigInt::from(1), q);
        let mut f = BigInt::from(2);
        while &f * &f <= n && f < BigInt::from(1_000_000) {
            let sq = &f * &f;
            while (&n % &sq).is_zero() {
                n /= &sq;
                out *= Rational::from_integer(f.clone());
            }
            f += 1;
        }
        ScaledRoot { coeff: self.coeff.clone() * out, radicand: Rational::from_integer(n) }
    }
}

impl<T: Field> fmt::Display for ScaledRoot<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == T::one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff == T::one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            // a compound coefficient such as `1+2*sqrt3` needs grouping
            let c = self.coeff.to_string();
            if c.char_indices().any(|(i, ch)| i > 0 && (ch == '+' || ch == '-')) {
                write!(f, "({c})*sqrt({})", self.radicand)
            } else {
                write!(f, "{c}*sqrt({})", self.radicand)
            }
        }
    }
}

/// `S(a)` with `vol_{d-1}([-1,1]^d ∩ a⊥) = |a|·S(a)`; homogeneous of degree −1.
///
/// Divided-difference form over the nonzero coordinates `c_1..c_m`:
/// `S = 2^{d-m} / ((m-1)!·∏c_i) · Σ_ε (∏ε_i)·(ε·c)_+^{m-1}`, and `S = 2^{d-1}/c_1` when `m = 1`.
/// Each term is continuous in `c` for `m ≥ 2`, so equal coefficients need no special case.
pub fn section_ratio<T: Field>(a: &[T]) -> Result<T> {
    let d = a.len();
    if d < 2 {
        return Err(Error::Dimension { got: d, min: 2, max: usize::MAX });
    }
    let c: Vec<T> = a.iter().filter(|x| !x.is_zero()).map(Field::abs).collect();
    if c.is_empty() {
        return Err(Error::Invalid("zero direction".into()));
    }
    if !T::is_exact() {
        let (value, magnitude) = alternating_sum(&c);
        if magnitude <= 1e6 * value.to_f64().abs() {
            return Ok(finish(value, &c, d));
        }
        // Heavy cancellation: redo the sum with the dyadic values of the floats.
        let exact: Vec<Rational> = c.iter().map(|x| x.to_rational().expect("finite float")).collect();
        return Ok(T::from_f64(finish(alternating_sum(&exact).0, &exact, d).to_f64()));
    }
    Ok(finish(alternating_sum(&c).0, &c, d))
}

fn finish<T: Field>(sum: T, c: &[T], d: usize) -> T {
    let m = c.len();
    let prod = c.iter().fold(T::one(), |acc, x| acc * x.clone());
    if m == 1 {
        return pow2::<T>(d as i32 - 1) / prod;
    }
    pow2::<T>((d - m) as i32) * sum / (factorial::<T>(m as u32 - 1) * prod)
}

/// `Σ_ε (∏ε)(ε·c)_+^{m-1}` and the sum of the absolute values of its terms.
fn alternating_sum<T: Field>(c: &[T]) -> (T, f64) {
    let m = c.len();
    let mut sum = T::zero();
    let mut magnitude = 0.0;
    if m == 1 {
        return (T::one(), 1.0);
    }
    for mask in 0u32..1 << m {
        let mut s = T::zero();
        for (i, ci) in c.iter().enumerate() {
            if mask >> i & 1 == 0 {
                s = s + ci.clone();
            } else {
                s = s - ci.clone();
            }
        }
        if s.sign() != Ordering::Greater {
            continue;
        }
        let term = s.powi(m as u32 - 1);
        magnitude += term.to_f64().abs();
        if mask.count_ones() % 2 == 0 {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
    }
    (sum, magnitude)
}

/// `(d−1)`-volume of `[-1,1]^d ∩ a⊥` as `S(a)·√|a|²`.
pub fn cube_section_volume<T: Field>(a: &[T]) -> Result<ScaledRoot<T>> {
    let s = section_ratio(a)?;
    Ok(ScaledRoot::new(s, norm_sq(a)))
}

/// Area of `[-1,1]^3 ∩ (x,1,1)⊥`, `(4 − x)·√(2 + x²)`.
pub fn section3_area<T: Field>(x: &T) -> Result<ScaledRoot<T>> {
    if x.sign() == Ordering::Less || x.cmp_value(&T::one()) == Ordering::Greater {
        return Err(Error::Invalid(format!("x = {x} outside [0, 1]")));
    }
    Ok(ScaledRoot::new(T::from_i64(4) - x.clone(), T::from_i64(2) + x.clone() * x.clone()))
}

/// `v_τ = 2^{1−d}·vol_{d−1}([-1,1]^d ∩ τ⊥)`, between 1 and `√2`.
pub fn v_tau<T: Field>(tau: &[T]) -> Result<ScaledRoot<T>> {
    if tau.iter().any(|t| t.sign() != Ordering::Greater) {
        return Err(Error::Invalid("tau entries must be positive".into()));
    }
    let vol = cube_section_volume(tau)?;
    Ok(vol.scale(&pow2::<T>(1 - tau.len() as i32)))
}
