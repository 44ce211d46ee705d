use std::cmp::Ordering;

use super::Field;
use crate::error::{Error, Result};

/// A bracketing interval `[lo, hi]` containing a sign change.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Field> Bracket<T> {
    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }
}

/// Successive bisection brackets of `f` on `[lo, hi]`.
///
/// The first item is the input bracket. Iteration stops once the midpoint
/// stops moving (floats) or lands on an exact zero.
pub fn bisect_brackets<T, F>(f: F, lo: T, hi: T) -> Result<BisectionIter<T, F>>
where
    T: Field,
    F: Fn(&T) -> T,
{
    let flo = f(&lo).sign();
    let fhi = f(&hi).sign();
    if flo == Ordering::Equal || fhi == Ordering::Equal {
        let root = if flo == Ordering::Equal { lo } else { hi };
        return Ok(BisectionIter { f, lo_sign: flo, bracket: Some(Bracket { lo: root.clone(), hi: root }), exact_hit: true });
    }
    if flo == fhi {
        return Err(Error::NoSignChange { lo: lo.to_f64(), hi: hi.to_f64() });
    }
    Ok(BisectionIter { f, lo_sign: flo, bracket: Some(Bracket { lo, hi }), exact_hit: false })
}

pub struct BisectionIter<T, F> {
    f: F,
    lo_sign: Ordering,
    bracket: Option<Bracket<T>>,
    exact_hit: bool,
}

impl<T: Field, F: Fn(&T) -> T> Iterator for BisectionIter<T, F> {
    type Item = Bracket<T>;

    fn next(&mut self) -> Option<Bracket<T>> {
        let current = self.bracket.take()?;
        if self.exact_hit {
            return Some(current);
        }
        let two = T::from_i64(2);
        let mid = (current.lo.clone() + current.hi.clone()) / two;
        let moved = mid != current.lo && mid != current.hi;
        if moved {
            let s = (self.f)(&mid).sign();
            self.bracket = Some(if s == Ordering::Equal {
                self.exact_hit = true;
                Bracket { lo: mid.clone(), hi: mid }
            } else if s == self.lo_sign {
                Bracket { lo: mid, hi: current.hi.clone() }
            } else {
                Bracket { lo: current.lo.clone(), hi: mid }
            });
        }
        Some(current)
    }
}

/// Root of a monotone function on `[lo, hi]`, to `tol` relative width.
pub fn monotone_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let g = |x: &f64| f(*x);
    let mut last = None;
    for b in bisect_brackets(g, lo, hi)? {
        let done = b.hi - b.lo <= tol * b.lo.abs().max(b.hi.abs()).max(1.0);
        last = Some(b);
        if done {
            break;
        }
    }
    let b = last.expect("bisection yields at least one bracket");
    Ok(0.5 * (b.lo + b.hi))
}

/// Exact bisection down to a bracket no wider than `width`.
pub fn monotone_root_exact<T, F>(f: F, lo: T, hi: T, width: &T) -> Result<Bracket<T>>
where
    T: Field,
    F: Fn(&T) -> T,
{
    if width.sign() != Ordering::Greater {
        return Err(Error::Invalid("bracket width must be positive".into()));
    }
    let mut last = None;
    for b in bisect_brackets(f, lo, hi)? {
        let done = b.width().cmp_value(width) != Ordering::Greater;
        last = Some(b);
        if done {
            break;
        }
    }
    Ok(last.expect("bisection yields at least one bracket"))
}
