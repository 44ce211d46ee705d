use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use super::rational::rational_nth_root;
use super::{Field, Rational, Scalar, ScalarKind};
use crate::error::Error;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// An element `a + b·√3` of ℚ(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad3 {
    a: Rational,
    b: Rational,
}

impl Quad3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Quad3 { a, b }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Self {
        Quad3::new(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
        )
    }

    /// `q·√3`.
    pub fn sqrt3_times(q: Rational) -> Self {
        Quad3::new(Rational::zero(), q)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt3_part(&self) -> &Rational {
        &self.b
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// `a - b·√3`.
    pub fn conjugate(&self) -> Self {
        Quad3::new(self.a.clone(), -self.b.clone())
    }

    /// `a² - 3b²`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(3.into()) * &self.b * &self.b
    }

    /// Exact sign of `a + b√3` by comparing `a²` against `3b²`.
    pub fn quad_sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = Field::sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            // Opposite signs: the larger magnitude wins.
            (sa, _) => {
                let lhs = &self.a * &self.a;
                let rhs = Rational::from_integer(3.into()) * &self.b * &self.b;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    fn sqrt(&self) -> Option<Self> {
        match self.quad_sign() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Quad3::zero()),
            Ordering::Greater => {}
        }
        if self.b.is_zero() {
            if let Some(r) = rational_nth_root(&self.a, 2) {
                return Some(Quad3::from(r));
            }
            let third = &self.a / Rational::from_integer(3.into());
            return rational_nth_root(&third, 2).map(Quad3::sqrt3_times);
        }
        // (p + q√3)² = p² + 3q² + 2pq√3 and N(y)² = N(x).
        let n = rational_nth_root(&self.norm(), 2)?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(p) = rational_nth_root(&cand, 2) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.b / (&two * &p);
                let mut y = Quad3::new(p, q);
                if y.clone() * y.clone() == *self {
                    if y.quad_sign() == Ordering::Less {
                        y = -y;
                    }
                    return Some(y);
                }
            }
        }
        None
    }
}

impl From<Rational> for Quad3 {
    fn from(a: Rational) -> Self {
        Quad3::new(a, Rational::zero())
    }
}

impl From<i64> for Quad3 {
    fn from(n: i64) -> Self {
        Quad3::from(Rational::from_integer(n.into()))
    }
}

impl Add for Quad3 {
    type Output = Quad3;
    fn add(self, rhs: Quad3) -> Quad3 {
        Quad3::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Quad3 {
    type Output = Quad3;
    fn sub(self, rhs: Quad3) -> Quad3 {
        Quad3::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for Quad3 {
    type Output = Quad3;
    fn mul(self, rhs: Quad3) -> Quad3 {
        let three = Rational::from_integer(3.into());
        let a = &self.a * &rhs.a + three * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad3::new(a, b)
    }
}

impl Div for Quad3 {
    type Output = Quad3;
    fn div(self, rhs: Quad3) -> Quad3 {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt3)");
        let num = self * rhs.conjugate();
        Quad3::new(num.a / &n, num.b / &n)
    }
}

impl Neg for Quad3 {
    type Output = Quad3;
    fn neg(self) -> Quad3 {
        Quad3::new(-self.a, -self.b)
    }
}

impl Field for Quad3 {
    const KIND: ScalarKind = ScalarKind::Quad3;

    fn zero() -> Self {
        Quad3::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        Quad3::new(<Rational as Field>::one(), Rational::zero())
    }

    fn from_i64(n: i64) -> Self {
        Quad3::from(n)
    }

    fn from_rational(q: &Rational) -> Self {
        Quad3::from(q.clone())
    }

    fn from_quad3(q: &Quad3) -> Option<Self> {
        Some(q.clone())
    }

    fn from_f64(x: f64) -> Self {
        Quad3::from(super::rational_from_f64(x))
    }

    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64();
        let b = self.b.to_f64();
        if a.signum() * b.signum() < 0.0 {
            // Avoid cancellation: a + b√3 = N / (a - b√3).
            self.norm().to_f64() / (a - b * SQRT3)
        } else {
            a + b * SQRT3
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Quad3(self.clone())
    }

    fn sign(&self) -> Ordering {
        self.quad_sign()
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        match n {
            0 => None,
            1 => Some(self.clone()),
            _ if n % 2 == 0 => self.sqrt()?.nth_root(n / 2),
            _ => {
                if let Some(q) = self.as_rational() {
                    return rational_nth_root(q, n).map(Quad3::from);
                }
                if self.a.is_zero() {
                    // (q√3)^n = q^n · 3^((n-1)/2) · √3 for odd n.
                    let scale = num_traits::pow::pow(Rational::from_integer(3.into()), (n as usize - 1) / 2);
                    return rational_nth_root(&(&self.b / scale), n).map(Quad3::sqrt3_times);
                }
                None
            }
        }
    }

    fn floor_i64(&self) -> Option<i64> {
        let approx = self.to_f64().floor();
        if !approx.is_finite() || approx.abs() > 9.0e15 {
            return None;
        }
        let mut n = approx as i64;
        while Quad3::from(n).cmp_value(self) == Ordering::Greater {
            n -= 1;
        }
        while Quad3::from(n + 1).cmp_value(self) != Ordering::Greater {
            n += 1;
        }
        Some(n)
    }
}

impl PartialOrd for Quad3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for Quad3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt3", self.b);
        }
        if self.b.sign() == Ordering::Less {
            write!(f, "{}-{}*sqrt3", self.a, self.b.abs())
        } else {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.strip_prefix('+').unwrap_or(s);
    Rational::from_str(t).map_err(|_| Error::Parse(s.to_string()))
}

impl FromStr for Quad3 {
    type Err = Error;

    /// Accepts `p/q`, `r/s*sqrt3`, `p/q+r/s*sqrt3`, `p/q-sqrt3` and similar.
    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = compact.strip_suffix("sqrt3") else {
            return parse_rational(&compact).map(Quad3::from);
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a = parse_rational(a_str)?;
        let b = match b_str {
            "" | "+" => <Rational as Field>::one(),
            "-" => -<Rational as Field>::one(),
            other => parse_rational(other)?,
        };
        Ok(Quad3::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3(a: (i64, i64), b: (i64, i64)) -> Quad3 {
        Quad3::from_ratios(a, b)
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q3((2, 1), (-1, 1)).quad_sign(), Ordering::Greater);
        assert_eq!(q3((5, 1), (-3, 1)).quad_sign(), Ordering::Less);
        assert_eq!(Quad3::zero().quad_sign(), Ordering::Equal);
        assert_eq!(q3((-2, 1), (1, 1)).quad_sign(), Ordering::Less);
        assert_eq!(q3((-1, 1), (1, 1)).quad_sign(), Ordering::Greater);
    }

    #[test]
    fn two_over_sqrt3_is_stored_as_two_thirds_sqrt3() {
        let x = Quad3::from(2) / q3((0, 1), (1, 1));
        assert_eq!(x, q3((0, 1), (2, 3)));
        assert_eq!(x.to_string(), "2/3*sqrt3");
    }

    #[test]
    fn inverse_of_unit() {
        let u = q3((2, 1), (1, 1));
        assert_eq!(u.clone() * u.recip(), Quad3::one());
        assert_eq!(u.recip(), q3((2, 1), (-1, 1)));
    }

    #[test]
    fn text_forms() {
        for s in ["5/4", "2/3*sqrt3", "1/2+3/4*sqrt3", "-1-2*sqrt3", "7/3-1/9*sqrt3"] {
            let x: Quad3 = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("sqrt3".parse::<Quad3>().unwrap(), q3((0, 1), (1, 1)));
        assert_eq!("1-sqrt3".parse::<Quad3>().unwrap(), q3((1, 1), (-1, 1)));
        assert_eq!("-sqrt3".parse::<Quad3>().unwrap(), q3((0, 1), (-1, 1)));
        assert!("1/0".parse::<Quad3>().is_err());
        assert!("x+sqrt3".parse::<Quad3>().is_err());
    }

    #[test]
    fn square_roots() {
        // (2 + √3)² = 7 + 4√3
        assert_eq!(q3((7, 1), (4, 1)).nth_root(2), Some(q3((2, 1), (1, 1))));
        assert_eq!(Quad3::from(3).nth_root(2), Some(q3((0, 1), (1, 1))));
        assert_eq!(q3((16, 9), (0, 1)).nth_root(4), Some(q3((0, 1), (2, 3))));
        assert_eq!(Quad3::from(2).nth_root(2), None);
        assert_eq!(Quad3::from(-4).nth_root(2), None);
        assert_eq!(q3((1, 1), (1, 1)).nth_root(2), None);
    }

    #[test]
    fn odd_root_of_pure_surd() {
        // (√3)³ = 3√3
        assert_eq!(q3((0, 1), (3, 1)).nth_root(3), Some(q3((0, 1), (1, 1))));
    }

    #[test]
    fn floor_near_integers() {
        assert_eq!(q3((0, 1), (2, 3)).floor_i64(), Some(1));
        assert_eq!(q3((-2, 1), (1, 1)).floor_i64(), Some(-1));
        assert_eq!(q3((4, 1), (0, 1)).floor_i64(), Some(4));
    }

    #[test]
    fn float_value_without_cancellation() {
        // 7 - 4√3 = 1/(7 + 4√3) ≈ 0.0717967697
        let x = q3((7, 1), (-4, 1));
        assert!((x.to_f64() - 1.0 / (7.0 + 4.0 * SQRT3)).abs() < 1e-16);
    }
}
