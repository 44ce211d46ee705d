use std::cell::OnceCell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{successive_minima_with_budget, Lattice, MinimaProfile, Parallelepiped, DEFAULT_NODE_BUDGET};
use crate::numeric::{factorial, pow2, Field, Rational, ToleranceConfig};
use crate::sections::{cube_dual_gauge, SectionDual, MAX_SECTION_DUAL_DIM};

use super::constants::{c_d, c_d_polynomial};
use super::tau::{TauMode, TauTuple};

/// Stable claim identifiers.
#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaimId {
    T3,
    T4,
    MK2,
    T5,
    T6,
    T7,
    FAM,
    FAMSHARP,
    WM,
    C12,
    /// Three-dimensional constants `2/√3` and `5/4`.
    T8,
    /// `∏_{k<d} μ_k(Π) ≤ √d` under `μ₁(Π*) ≤ 1`.
    CHAIN,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::T3,
        ClaimId::T4,
        ClaimId::MK2,
        ClaimId::T5,
        ClaimId::T6,
        ClaimId::T7,
        ClaimId::FAM,
        ClaimId::FAMSHARP,
        ClaimId::WM,
        ClaimId::C12,
        ClaimId::T8,
        ClaimId::CHAIN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::T3 => "T3",
            ClaimId::T4 => "T4",
            ClaimId::MK2 => "MK2",
            ClaimId::T5 => "T5",
            ClaimId::T6 => "T6",
            ClaimId::T7 => "T7",
            ClaimId::FAM => "FAM",
            ClaimId::FAMSHARP => "FAMSHARP",
            ClaimId::WM => "WM",
            ClaimId::C12 => "C12",
            ClaimId::T8 => "T8",
            ClaimId::CHAIN => "CHAIN",
        }
    }

    /// Parses a comma-separated filter such as `"T3,T6"`.
    pub fn parse_list(s: &str) -> Result<Vec<ClaimId>> {
        let mut out: Vec<ClaimId> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("claim id {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Violation,
    Skipped,
}

/// Result of one claim on one body.
///
/// `margin` is bound minus attained value, minimized over all inequalities of the claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub outcome: Outcome,
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
    pub margin: Option<f64>,
    pub witnesses: Vec<Vec<i64>>,
    pub reason: Option<String>,
    pub v_tau_range: Option<(f64, f64)>,
}

impl ClaimReport {
    fn skipped(claim: ClaimId, hypothesis: Option<bool>, reason: impl Into<String>) -> Self {
        ClaimReport {
            claim,
            outcome: Outcome::Skipped,
            hypothesis,
            conclusion: None,
            margin: None,
            witnesses: Vec::new(),
            reason: Some(reason.into()),
            v_tau_range: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimConfig {
    pub tolerance: ToleranceConfig,
    pub tau_samples: usize,
    /// Seeds the τ directions of the FAM claims.
    pub seed: u64,
    pub budget: u64,
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig { tolerance: ToleranceConfig::default(), tau_samples: 8, seed: 0, budget: DEFAULT_NODE_BUDGET }
    }
}

/// One inequality of a conclusion: the exact verdict, and `bound − value` in floats.
struct Condition {
    exact: bool,
    margin: f64,
    scale: f64,
}

impl Condition {
    fn le<T: Field>(value: &T, bound: &T) -> Self {
        Condition {
            exact: value.cmp_value(bound) != Ordering::Greater,
            margin: bound.to_f64() - value.to_f64(),
            scale: bound.to_f64(),
        }
    }
}

type Cached<V> = OnceCell<std::result::Result<V, String>>;

/// Evaluates claims on `body` against `ℤ^d`.
pub fn check_claims<T: Field>(
    body: &Parallelepiped<T>,
    claims: &[ClaimId],
    config: &ClaimConfig,
) -> Result<Vec<ClaimReport>> {
    config.tolerance.validate()?;
    let d = body.dim();
    if !(2..=crate::lattice::MAX_MINIMA_DIM).contains(&d) {
        return Err(Error::Dimension { got: d, min: 2, max: crate::lattice::MAX_MINIMA_DIM });
    }
    let ctx = Context {
        body,
        config,
        d,
        star: OnceCell::new(),
        minima: OnceCell::new(),
        star_minima: OnceCell::new(),
        dual_min: OnceCell::new(),
    };
    Ok(claims.iter().map(|&c| ctx.check(c)).collect())
}

struct Context<'a, T> {
    body: &'a Parallelepiped<T>,
    config: &'a ClaimConfig,
    d: usize,
    star: Cached<Parallelepiped<T>>,
    minima: Cached<MinimaProfile<T>>,
    star_minima: Cached<MinimaProfile<T>>,
    dual_min: Cached<(T, Vec<i64>)>,
}

impl<T: Field> Context<'_, T> {
    fn tol(&self) -> &ToleranceConfig {
        &self.config.tolerance
    }

    fn star(&self) -> std::result::Result<&Parallelepiped<T>, String> {
        self.star
            .get_or_init(|| self.body.pseudo_compound().map_err(|e| format!("pseudo-compound: {e}")))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn minima(&self) -> std::result::Result<&MinimaProfile<T>, String> {
        self.minima.get_or_init(|| self.profile_of(self.body)).as_ref().map_err(Clone::clone)
    }

    fn star_minima(&self) -> std::result::Result<&MinimaProfile<T>, String> {
        self.star_minima
            .get_or_init(|| self.star().and_then(|s| self.profile_of(s)))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn dual_min(&self) -> std::result::Result<&(T, Vec<i64>), String> {
        self.dual_min
            .get_or_init(|| {
                if self.d > MAX_SECTION_DUAL_DIM {
                    return Err(format!("section-dual minimum needs d ≤ {MAX_SECTION_DUAL_DIM}"));
                }
                SectionDual::new(self.body)
                    .and_then(|s| s.first_minimum_with_budget(self.config.budget))
                    .map_err(|e| format!("section-dual minimum: {e}"))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn profile_of(&self, body: &Parallelepiped<T>) -> std::result::Result<MinimaProfile<T>, String> {
        successive_minima_with_budget(body, &Lattice::integer(self.d), self.d, self.config.budget)
            .map_err(|e| format!("successive minima: {e}"))
    }

    /// `a ≤ b`, with slack for floats.
    fn hyp_le(&self, a: &T, b: &T) -> bool {
        self.tol().le_field(a, b)
    }

    /// `a > b`, by at least `δ` for floats.
    fn hyp_gt(&self, a: &T, b: &T) -> bool {
        self.tol().gt_field(a, b)
    }

    fn holds(&self, c: &Condition) -> bool {
        if T::is_exact() {
            c.exact
        } else {
            c.margin >= -self.tol().slack(c.scale)
        }
    }

    fn conclude(&self, claim: ClaimId, conditions: Vec<Condition>, witnesses: Vec<Vec<i64>>) -> ClaimReport {
        let ok = conditions.iter().all(|c| self.holds(c));
        let margin = conditions.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
        ClaimReport {
            claim,
            outcome: if ok { Outcome::Pass } else { Outcome::Violation },
            hypothesis: Some(true),
            conclusion: Some(ok),
            margin: margin.is_finite().then_some(margin),
            witnesses,
            reason: None,
            v_tau_range: None,
        }
    }

    fn check(&self, claim: ClaimId) -> ClaimReport {
        let result = match claim {
            ClaimId::T3 => self.t3(),
            ClaimId::T4 => self.t4(),
            ClaimId::MK2 => self.mk2(),
            ClaimId::T5 => self.t5_t6(claim, 1),
            ClaimId::T6 => self.t5_t6(claim, 2),
            ClaimId::T7 => self.t7(),
            ClaimId::FAM => self.family(claim, TauMode::Plain),
            ClaimId::FAMSHARP => self.family(claim, TauMode::Sharp),
            ClaimId::WM => self.wm(),
            ClaimId::C12 => self.c12(),
            ClaimId::T8 => self.t8(),
            ClaimId::CHAIN => self.chain(),
        };
        result.unwrap_or_else(|reason| ClaimReport::skipped(claim, None, reason))
    }

    /// `μ₁(Π*) ≤ 1`.
    fn star_hypothesis(&self) -> std::result::Result<bool, String> {
        Ok(self.hyp_le(self.star_minima()?.get(1), &T::one()))
    }

    fn t3(&self) -> std::result::Result<ClaimReport, String> {
        if !self.star_hypothesis()? {
            return Ok(ClaimReport::skipped(ClaimId::T3, Some(false), "hypothesis μ1(Π*) ≤ 1 is false"));
        }
        let m = self.minima()?;
        let bound = T::from_i64(self.d as i64 - 1);
        Ok(self.conclude(ClaimId::T3, vec![Condition::le(m.get(1), &bound)], vec![m.witnesses[0].clone()]))
    }

    fn t4(&self) -> std::result::Result<ClaimReport, String> {
        let d = self.d;
        let m = self.minima()?;
        let s = self.star_minima()?;
        let vol = self.body.volume();
        let lower = pow2::<T>(d as i32) / (T::from_i64(d as i64) * vol.clone());
        let upper = pow2::<T>(d as i32) * factorial::<T>(d as u32) / vol;
        let mut conds = Vec::new();
        for k in 1..=d {
            let p = s.get(k).clone() * m.get(d + 1 - k).clone();
            conds.push(Condition::le(&lower, &p));
            conds.push(Condition::le(&p, &upper));
        }
        Ok(self.conclude(ClaimId::T4, conds, Vec::new()))
    }

    fn mk2(&self) -> std::result::Result<ClaimReport, String> {
        let d = self.d;
        let mut conds = Vec::new();
        for (body, profile) in [(self.body, self.minima()?), (self.star()?, self.star_minima()?)] {
            let vol = body.volume();
            let upper = pow2::<T>(d as i32) / vol;
            let lower = upper.clone() / factorial::<T>(d as u32);
            let p = profile.product();
            conds.push(Condition::le(&lower, &p));
            conds.push(Condition::le(&p, &upper));
        }
        Ok(self.conclude(ClaimId::MK2, conds, Vec::new()))
    }

    /// `μ_k ≤ d^{1/(e(d−k))}` for `k < d`, i.e. `μ_k^{e(d−k)} ≤ d`.
    fn t5_t6(&self, claim: ClaimId, e: u32) -> std::result::Result<ClaimReport, String> {
        let m = self.minima()?;
        if !(self.star_hypothesis()? && self.hyp_le(&T::one(), m.get(1))) {
            return Ok(ClaimReport::skipped(claim, Some(false), "hypothesis μ1(Π*) ≤ 1 ∧ μ1(Π) ≥ 1 is false"));
        }
        let d = self.d;
        let dd = T::from_i64(d as i64);
        let conds = (1..d)
            .map(|k| {
                let p = e * (d - k) as u32;
                let bound = (d as f64).powf(1.0 / p as f64);
                Condition {
                    exact: m.get(k).powi(p).cmp_value(&dd) != Ordering::Greater,
                    margin: bound - m.get(k).to_f64(),
                    scale: bound,
                }
            })
            .collect();
        Ok(self.conclude(claim, conds, m.witnesses[..d - 1].to_vec()))
    }

    /// `μ₁(Π*) ≤ 1 ∧ μ₁(Π) > 1`.
    fn strict_hypothesis(&self) -> std::result::Result<bool, String> {
        Ok(self.star_hypothesis()? && self.hyp_gt(self.minima()?.get(1), &T::one()))
    }

    fn t7(&self) -> std::result::Result<ClaimReport, String> {
        if self.d < 3 {
            return Ok(ClaimReport::skipped(ClaimId::T7, None, "c_d needs d ≥ 3"));
        }
        if !self.strict_hypothesis()? {
            return Ok(ClaimReport::skipped(ClaimId::T7, Some(false), "hypothesis μ1(Π*) ≤ 1 ∧ μ1(Π) > 1 is false"));
        }
        let m = self.minima()?;
        let c = c_d(self.d).map_err(|e| e.to_string())?;
        let cond = Condition {
            exact: c_d_polynomial(m.get(2), self.d).sign() != Ordering::Greater,
            margin: c - m.get(2).to_f64(),
            scale: c,
        };
        Ok(self.conclude(ClaimId::T7, vec![cond], m.witnesses[..2].to_vec()))
    }

    fn t8(&self) -> std::result::Result<ClaimReport, String> {
        if self.d != 3 {
            return Ok(ClaimReport::skipped(ClaimId::T8, None, "three-dimensional claim"));
        }
        if !self.strict_hypothesis()? {
            return Ok(ClaimReport::skipped(ClaimId::T8, Some(false), "hypothesis μ1(Π*) ≤ 1 ∧ μ1(Π) > 1 is false"));
        }
        let m = self.minima()?;
        let nu1 = 2.0 / 3f64.sqrt();
        let mu1 = m.get(1);
        let first = Condition {
            exact: (T::from_i64(3) * mu1.clone() * mu1.clone()).cmp_value(&T::from_i64(4)) != Ordering::Greater,
            margin: nu1 - mu1.to_f64(),
            scale: nu1,
        };
        let second = Condition::le(m.get(2), &T::from_rational(&Rational::new(5.into(), 4.into())));
        Ok(self.conclude(ClaimId::T8, vec![first, second], m.witnesses[..2].to_vec()))
    }

    fn chain(&self) -> std::result::Result<ClaimReport, String> {
        if !self.star_hypothesis()? {
            return Ok(ClaimReport::skipped(ClaimId::CHAIN, Some(false), "hypothesis μ1(Π*) ≤ 1 is false"));
        }
        let m = self.minima()?;
        let p = m.values[..self.d - 1].iter().fold(T::one(), |acc, v| acc * v.clone());
        let bound = (self.d as f64).sqrt();
        let cond = Condition {
            exact: (p.clone() * p.clone()).cmp_value(&T::from_i64(self.d as i64)) != Ordering::Greater,
            margin: bound - p.to_f64(),
            scale: bound,
        };
        Ok(self.conclude(ClaimId::CHAIN, vec![cond], Vec::new()))
    }

    fn wm(&self) -> std::result::Result<ClaimReport, String> {
        let (g, w) = self.dual_min()?;
        if !self.hyp_le(g, &T::one()) {
            return Ok(ClaimReport::skipped(ClaimId::WM, Some(false), "hypothesis μ1(Π^∧) ≤ 1 is false"));
        }
        let m = self.minima()?;
        let p = m.values[..self.d - 1].iter().fold(T::one(), |acc, v| acc * v.clone());
        Ok(self.conclude(ClaimId::WM, vec![Condition::le(&p, &T::one())], vec![w.clone()]))
    }

    fn c12(&self) -> std::result::Result<ClaimReport, String> {
        let star = self.star()?;
        let dual = SectionDual::new(self.body).map_err(|e| e.to_string())?;
        let dd = T::from_i64(self.d as i64);
        let bound = (self.d as f64).sqrt();
        let conds = star
            .vertices_half()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|v| {
                let g = dual.gauge(v);
                Condition {
                    exact: (g.clone() * g.clone()).cmp_value(&dd) != Ordering::Greater,
                    margin: bound - g.to_f64(),
                    scale: bound,
                }
            })
            .collect();
        Ok(self.conclude(ClaimId::C12, conds, Vec::new()))
    }

    /// For sampled `τ`, with `λ` the factor putting `λτ` on the surface:
    /// `μ₁(H_{λτ}Π) = μ₁(H_τΠ)/λ ≤ 1`, tested as `μ₁(H_τΠ)^{2(d−1)} ≤ λ^{2(d−1)}`,
    /// and the vertex of `λτ` lies in `B_d^∧`.
    fn family(&self, claim: ClaimId, mode: TauMode) -> std::result::Result<ClaimReport, String> {
        if !self.star_hypothesis()? {
            return Ok(ClaimReport::skipped(claim, Some(false), "hypothesis μ1(Π*) ≤ 1 is false"));
        }
        let d = self.d;
        let n = 2 * (d as u32 - 1);
        let lattice = Lattice::integer(d);
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ (claim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut conds = Vec::new();
        let mut worst: Option<(f64, Vec<i64>)> = None;
        let mut v_range: Option<(f64, f64)> = None;
        for _ in 0..self.config.tau_samples {
            let tau = TauTuple::new(sample_direction::<T>(&mut rng, d)).map_err(|e| e.to_string())?;
            let x = tau.scale_power(mode).map_err(|e| e.to_string())?;
            let lambda = x.to_f64().powf(1.0 / n as f64);
            if mode == TauMode::Sharp {
                let v = tau.weight_sq(mode).map_err(|e| e.to_string())?.to_f64().sqrt();
                v_range = Some(v_range.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))));
            }
            let shifted = self.body.hyperbolic_shift(tau.as_slice()).map_err(|e| e.to_string())?;
            let m = successive_minima_with_budget(&shifted, &lattice, 1, self.config.budget)
                .map_err(|e| format!("shifted body: {e}"))?;
            let mu = m.get(1);
            let margin = 1.0 - mu.to_f64() / lambda;
            conds.push(Condition { exact: mu.powi(n).cmp_value(&x) != Ordering::Greater, margin, scale: 1.0 });
            if worst.as_ref().is_none_or(|(w, _)| margin < *w) {
                worst = Some((margin, m.witnesses[0].clone()));
            }
            let g = cube_dual_gauge(tau.as_slice()) / tau.product();
            conds.push(Condition {
                exact: (g.clone() * g.clone()).cmp_value(&x) != Ordering::Greater,
                margin: 1.0 - g.to_f64() / lambda.powi(d as i32 - 1),
                scale: 1.0,
            });
        }
        let mut report = self.conclude(claim, conds, worst.map(|w| vec![w.1]).unwrap_or_default());
        report.v_tau_range = v_range;
        Ok(report)
    }
}

/// Uniform direction in the positive orthant; exact kinds round to a 1/64 grid.
fn sample_direction<T: Field>(rng: &mut ChaCha8Rng, d: usize) -> Vec<T> {
    loop {
        let g: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let max = g.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 || g.iter().any(|&x| x < 1e-3 * max) {
            continue;
        }
        if T::is_exact() {
            return g
                .iter()
                .map(|x| {
                    let k = ((x / norm) * 64.0).round().max(1.0) as i64;
                    T::from_rational(&Rational::new(k.into(), 64.into()))
                })
                .collect();
        }
        return g.iter().map(|x| T::from_f64(x / norm)).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Matrix;

    #[test]
    fn cube_passes_everything() {
        for d in 2..=4 {
            let cube = Parallelepiped::<Rational>::cube(d);
            let reports = check_claims(&cube, &ClaimId::ALL, &ClaimConfig::default()).unwrap();
            for r in &reports {
                assert_ne!(r.outcome, Outcome::Violation, "{r:?}");
            }
            let t3 = &reports[0];
            assert_eq!(t3.outcome, Outcome::Pass);
            assert_eq!(t3.margin, Some(d as f64 - 2.0));
            let fam = reports.iter().find(|r| r.claim == ClaimId::FAM).unwrap();
            assert_eq!(fam.outcome, Outcome::Pass);
        }
    }

    #[test]
    fn strict_hypothesis_skips_on_the_cube() {
        let cube = Parallelepiped::<f64>::cube(3);
        let r = check_claims(&cube, &[ClaimId::T7, ClaimId::T8], &ClaimConfig::default()).unwrap();
        assert!(r.iter().all(|r| r.outcome == Outcome::Skipped && r.hypothesis == Some(false)));
    }

    #[test]
    fn sheared_box_has_no_violations() {
        let h = Matrix::<Rational>::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let p = Parallelepiped::new(h, vec![Rational::new(1.into(), 2.into()), Rational::from_i64(2), Rational::from_i64(1)])
            .unwrap();
        let r = check_claims(&p, &ClaimId::ALL, &ClaimConfig::default()).unwrap();
        assert!(r.iter().all(|r| r.outcome != Outcome::Violation), "{r:?}");
    }

    #[test]
    fn claim_ids_parse() {
        assert_eq!(ClaimId::parse_list("T3, famsharp,T3").unwrap(), vec![ClaimId::T3, ClaimId::FAMSHARP]);
        assert!("T9".parse::<ClaimId>().is_err());
        assert_eq!(serde_json::to_string(&ClaimId::FAMSHARP).unwrap(), "\"FAMSHARP\"");
    }
}
