use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{successive_minima_with_budget, Lattice, Parallelepiped, DEFAULT_NODE_BUDGET};
use crate::numeric::{Field, Matrix, Rational};
use crate::witness::{build_witness, reformulated_body};

/// Grid of the log-uniform bounds, so exact and float instances coincide.
const ETA_GRID: i64 = 256;
/// Denominator of the exact calibration factor.
const SCALE_GRID: i64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceStyle {
    Random,
    Cube,
    /// `Π₁ = A⁻¹Π` at `ε = 1/2`.
    WitnessOne,
    /// `Π₂ = B⁻¹Π` at `ε = 1/2`.
    WitnessTwo,
}

impl fmt::Display for InstanceStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceStyle::Random => "random",
            InstanceStyle::Cube => "cube",
            InstanceStyle::WitnessOne => "witness-one",
            InstanceStyle::WitnessTwo => "witness-two",
        })
    }
}

impl FromStr for InstanceStyle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(InstanceStyle::Random),
            "cube" => Ok(InstanceStyle::Cube),
            "witness-one" | "witness1" => Ok(InstanceStyle::WitnessOne),
            "witness-two" | "witness2" => Ok(InstanceStyle::WitnessTwo),
            other => Err(Error::Parse(format!("instance style {other}"))),
        }
    }
}

/// Product of `3d` elementary row operations `r_i += c·r_j`, `c ∈ {±1, ±2}`.
pub fn random_unimodular(d: usize, rng: &mut impl Rng) -> Matrix<i64> {
    let mut rows: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        for k in 0..d {
            rows[i][k] += c * rows[j][k];
        }
    }
    Matrix::from_rows(rows).expect("square")
}

fn raw_random<T: Field>(d: usize, rng: &mut impl Rng) -> Result<Parallelepiped<T>> {
    let h = random_unimodular(d, rng);
    let forms = h.map(|&x| T::from_i64(x));
    let bounds = (0..d)
        .map(|_| {
            let eta: f64 = rng.gen_range((0.25f64).ln()..=(4.0f64).ln()).exp();
            let n = ((eta * ETA_GRID as f64).round() as i64).max(1);
            T::from_rational(&Rational::new(n.into(), ETA_GRID.into()))
        })
        .collect();
    Parallelepiped::new(forms, bounds)
}

/// Calibration factor `s` with `μ₁((sΠ)*) = 1`, or just below 1 when `s` is irrational.
fn calibration<T: Field>(body: &Parallelepiped<T>) -> Result<T> {
    let d = body.dim();
    let star = body.pseudo_compound()?;
    let mu = successive_minima_with_budget(&star, &Lattice::integer(d), 1, DEFAULT_NODE_BUDGET)?.values[0].clone();
    let e = d as u32 - 1;
    if !T::is_exact() {
        return Ok(T::from_f64(mu.to_f64().powf(1.0 / e as f64)));
    }
    if let Some(s) = mu.nth_root(e) {
        return Ok(s);
    }
    let grid = T::from_i64(SCALE_GRID);
    let mut n = (mu.to_f64().powf(1.0 / e as f64) * SCALE_GRID as f64).ceil() as i64;
    loop {
        let s = T::from_i64(n) / grid.clone();
        if s.powi(e).cmp_value(&mu) != Ordering::Less {
            return Ok(s);
        }
        n += 1;
    }
}

/// A body for the randomized suite.
///
/// `Random` bodies are scaled so that `μ₁(Π*, ℤ^d) = 1`. In exact kinds the factor is
/// rounded up to a multiple of `2^{-20}` when its root is irrational, which keeps `μ₁(Π*) ≤ 1`.
pub fn gen_instance<T: Field>(d: usize, seed: u64, style: InstanceStyle) -> Result<Parallelepiped<T>> {
    if d < 2 {
        return Err(Error::Dimension { got: d, min: 2, max: usize::MAX });
    }
    match style {
        InstanceStyle::Cube => Ok(Parallelepiped::cube(d)),
        InstanceStyle::WitnessOne | InstanceStyle::WitnessTwo => {
            if d != 3 {
                return Err(Error::Dimension { got: d, min: 3, max: 3 });
            }
            let w = build_witness(&Rational::new(1.into(), 2.into()))?;
            let which = if style == InstanceStyle::WitnessOne { 1 } else { 2 };
            let body = reformulated_body(&w, which)?;
            let convert = |x: &crate::numeric::Quad3| {
                T::from_quad3(x).ok_or_else(|| Error::NotRepresentable(format!("{x} in {}", T::KIND.as_str())))
            };
            let entries = body.forms().entries().iter().map(convert).collect::<Result<Vec<T>>>()?;
            let bounds = body.bounds().iter().map(convert).collect::<Result<Vec<T>>>()?;
            Parallelepiped::new(Matrix::from_vec(3, 3, entries)?, bounds)
        }
        InstanceStyle::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let body = raw_random::<T>(d, &mut rng)?;
            let s = calibration(&body)?;
            body.scaled(&s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::successive_minima;

    fn star_mu1<T: Field>(b: &Parallelepiped<T>) -> T {
        let star = b.pseudo_compound().unwrap();
        successive_minima(&star, &Lattice::integer(b.dim()), 1).unwrap().values[0].clone()
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 2..=6 {
            let h = random_unimodular(d, &mut rng).map(|&x| Rational::from_i64(x));
            assert_eq!(h.det().unwrap(), Rational::from_i64(1));
        }
    }

    #[test]
    fn float_calibration() {
        let b = gen_instance::<f64>(3, 42, InstanceStyle::Random).unwrap();
        assert!((star_mu1(&b) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_calibration_stays_below_one() {
        for seed in 0..5 {
            let b = gen_instance::<Rational>(3, seed, InstanceStyle::Random).unwrap();
            let mu = star_mu1(&b);
            assert!(mu <= Rational::from_i64(1));
            assert!(mu.to_f64() > 1.0 - 1e-5);
        }
    }

    #[test]
    fn styles() {
        let c = gen_instance::<Rational>(4, 0, InstanceStyle::Cube).unwrap();
        assert_eq!(star_mu1(&c), Rational::from_i64(1));
        assert!(gen_instance::<f64>(1, 0, InstanceStyle::Random).is_err());
        assert!(gen_instance::<Rational>(3, 0, InstanceStyle::WitnessTwo).is_ok());
        assert!(gen_instance::<Rational>(3, 0, InstanceStyle::WitnessOne).is_err());
        assert!(gen_instance::<f64>(3, 0, InstanceStyle::WitnessOne).is_ok());
    }
}
