use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Field, Quad3, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Quad3,
    Float,
}

impl ScalarKind {
    pub fn is_exact(self) -> bool {
        self != ScalarKind::Float
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Quad3 => "quad3",
            ScalarKind::Float => "float",
        }
    }
}

impl FromStr for ScalarKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarKind::Rational),
            "quad3" => Ok(ScalarKind::Quad3),
            "float" => Ok(ScalarKind::Float),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// A dynamically typed scalar, used at text boundaries.
///
/// Arithmetic promotes `Rational` to `Quad3`. Mixing `Float` with an exact
/// kind is an error; call [`Scalar::to_float`] first.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Quad3(Quad3),
    Float(f64),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Quad3(_) => ScalarKind::Quad3,
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.as_f64())
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.to_f64(),
            Scalar::Quad3(q) => q.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    /// Converts into a typed field element. Floats only go to `f64`; exact
    /// values go to `f64` only because the caller asked for a float field.
    pub fn to_field<T: Field>(&self) -> Result<T> {
        match self {
            Scalar::Rational(q) => Ok(T::from_rational(q)),
            Scalar::Quad3(q) => T::from_quad3(q).ok_or_else(|| Error::NotRepresentable(q.to_string())),
            Scalar::Float(x) => {
                if T::is_exact() {
                    Err(Error::KindMismatch(ScalarKind::Float, T::KIND))
                } else {
                    Ok(T::from_f64(*x))
                }
            }
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> Result<Promoted> {
        use Scalar::*;
        Ok(match (a, b) {
            (Rational(x), Rational(y)) => Promoted::Rational(x.clone(), y.clone()),
            (Float(x), Float(y)) => Promoted::Float(*x, *y),
            (Float(_), other) | (other, Float(_)) => {
                return Err(Error::KindMismatch(ScalarKind::Float, other.kind()))
            }
            (x, y) => Promoted::Quad3(x.as_quad3(), y.as_quad3()),
        })
    }

    fn as_quad3(&self) -> Quad3 {
        match self {
            Scalar::Rational(q) => Quad3::from(q.clone()),
            Scalar::Quad3(q) => q.clone(),
            Scalar::Float(_) => unreachable!("floats are never promoted"),
        }
    }

    fn combine(&self, other: &Scalar, op: Op) -> Result<Scalar> {
        if op == Op::Div && other.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(match Scalar::promote(self, other)? {
            Promoted::Rational(x, y) => Scalar::Rational(op.apply(x, y)),
            Promoted::Quad3(x, y) => Scalar::Quad3(op.apply(x, y)),
            Promoted::Float(x, y) => Scalar::Float(op.apply(x, y)),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => Field::is_zero(q),
            Scalar::Quad3(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Add)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Sub)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Mul)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, Op::Div)
    }
}

enum Promoted {
    Rational(Rational, Rational),
    Quad3(Quad3, Quad3),
    Float(f64, f64),
}

#[derive(Clone, Copy, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    fn apply<T: Field>(self, x: T, y: T) -> T {
        match self {
            Op::Add => x + y,
            Op::Sub => x - y,
            Op::Mul => x * y,
            Op::Div => x / y,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quad3(q) => write!(f, "{q}"),
            Scalar::Float(x) => {
                // Always show a decimal point so the text parses back as a float.
                if x.fract() == 0.0 && x.is_finite() && x.abs() < 1e16 {
                    write!(f, "{x:.1}")
                } else {
                    write!(f, "{x:?}")
                }
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        if t.contains("sqrt3") {
            return t.parse::<Quad3>().map(Scalar::Quad3);
        }
        let looks_float = t.contains(['.', 'e', 'E']) || t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("nan");
        if looks_float && !t.contains('/') {
            return t.parse::<f64>().map(Scalar::Float).map_err(|_| Error::Parse(s.to_string()));
        }
        let body = t.strip_prefix('+').unwrap_or(t);
        Rational::from_str(body).map(Scalar::Rational).map_err(|_| Error::Parse(s.to_string()))
    }
}
