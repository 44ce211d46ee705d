use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instance::{gen_instance, InstanceStyle};
use crate::error::{Error, Result};
use crate::lattice::{DEFAULT_NODE_BUDGET, MAX_MINIMA_DIM};
use crate::numeric::{Field, Quad3, Rational, ToleranceConfig};
use crate::transference::{check_claims, ClaimConfig, ClaimId, ClaimReport, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteMode {
    Exact,
    Float,
}

impl fmt::Display for SuiteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteMode::Exact => "exact",
            SuiteMode::Float => "float",
        })
    }
}

impl FromStr for SuiteMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SuiteMode::Exact),
            "float" => Ok(SuiteMode::Float),
            other => Err(Error::Parse(format!("mode {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub mode: SuiteMode,
    pub claims: Vec<ClaimId>,
    pub tau_samples: usize,
    pub tolerance: ToleranceConfig,
    pub style: InstanceStyle,
    pub budget: u64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            dim: 3,
            trials: 10,
            seed: 0,
            mode: SuiteMode::Float,
            claims: ClaimId::ALL.to_vec(),
            tau_samples: 8,
            tolerance: ToleranceConfig::default(),
            style: InstanceStyle::Random,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 || self.dim > MAX_MINIMA_DIM {
            return Err(Error::Dimension { got: self.dim, min: 2, max: MAX_MINIMA_DIM });
        }
        if self.mode == SuiteMode::Exact && self.style == InstanceStyle::Random && self.dim != 3 {
            return Err(Error::Invalid("exact random instances are limited to d = 3".into()));
        }
        self.tolerance.validate()
    }

    /// Seed of trial `index`: the first output of stream `index` of the master generator.
    pub fn trial_seed(&self, index: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng.next_u64()
    }

    fn claim_config(&self, seed: u64) -> ClaimConfig {
        ClaimConfig { tolerance: self.tolerance, tau_samples: self.tau_samples, seed, budget: self.budget }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceId {
    pub trial: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim: ClaimId,
    pub instances: u64,
    pub passes: u64,
    pub skips: u64,
    pub violations: u64,
    pub worst_margin: Option<f64>,
    pub worst_instance: Option<InstanceId>,
    pub violating_instances: Vec<InstanceId>,
    pub skip_reasons: BTreeMap<String, u64>,
}

impl ClaimSummary {
    fn new(claim: ClaimId) -> Self {
        ClaimSummary {
            claim,
            instances: 0,
            passes: 0,
            skips: 0,
            violations: 0,
            worst_margin: None,
            worst_instance: None,
            violating_instances: Vec::new(),
            skip_reasons: BTreeMap::new(),
        }
    }

    fn record(&mut self, id: InstanceId, r: &ClaimReport) {
        self.instances += 1;
        match r.outcome {
            Outcome::Pass => self.passes += 1,
            Outcome::Violation => {
                self.violations += 1;
                self.violating_instances.push(id);
            }
            Outcome::Skipped => {
                self.skips += 1;
                let reason = r.reason.clone().unwrap_or_else(|| "unspecified".into());
                *self.skip_reasons.entry(reason).or_default() += 1;
            }
        }
        if let Some(m) = r.margin.filter(|m| m.is_finite() && r.outcome != Outcome::Skipped) {
            if self.worst_margin.map_or(true, |w| m < w) {
                self.worst_margin = Some(m);
                self.worst_instance = Some(id);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: TrialConfig,
    pub claims: Vec<ClaimSummary>,
    pub v_tau_range: Option<(f64, f64)>,
    /// Wall time; the only field that differs between identical runs.
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn violations(&self) -> u64 {
        self.claims.iter().map(|c| c.violations).sum()
    }

    pub fn summary(&self, claim: ClaimId) -> Option<&ClaimSummary> {
        self.claims.iter().find(|c| c.claim == claim)
    }

    /// The report with `runtime_ms` zeroed, for reproducibility comparisons.
    pub fn without_runtime(&self) -> Self {
        VerificationReport { runtime_ms: 0, ..self.clone() }
    }
}

fn evaluate<T: Field>(config: &TrialConfig, id: InstanceId) -> Vec<ClaimReport> {
    let outcome = gen_instance::<T>(config.dim, id.seed, config.style)
        .and_then(|body| check_claims(&body, &config.claims, &config.claim_config(id.seed)));
    outcome.unwrap_or_else(|e| {
        config
            .claims
            .iter()
            .map(|&claim| ClaimReport {
                claim,
                outcome: Outcome::Skipped,
                hypothesis: None,
                conclusion: None,
                margin: None,
                witnesses: Vec::new(),
                reason: Some(format!("instance: {e}")),
                v_tau_range: None,
            })
            .collect()
    })
}

/// Aggregates per-trial results given in trial order.
pub fn aggregate(config: &TrialConfig, results: &[(InstanceId, Vec<ClaimReport>)], runtime_ms: u64) -> VerificationReport {
    let mut claims: Vec<ClaimSummary> = config.claims.iter().map(|&c| ClaimSummary::new(c)).collect();
    let mut v_tau_range: Option<(f64, f64)> = None;
    for (id, reports) in results {
        for r in reports {
            if let Some(s) = claims.iter_mut().find(|s| s.claim == r.claim) {
                s.record(*id, r);
            }
            if let Some((lo, hi)) = r.v_tau_range {
                v_tau_range = Some(match v_tau_range {
                    None => (lo, hi),
                    Some((a, b)) => (a.min(lo), b.max(hi)),
                });
            }
        }
    }
    VerificationReport { version: env!("CARGO_PKG_VERSION").to_string(), config: config.clone(), claims, v_tau_range, runtime_ms }
}

/// Evaluates trial `index` alone; `run_suite` is the ordered collection of these.
pub fn run_trial(config: &TrialConfig, index: u64) -> (InstanceId, Vec<ClaimReport>) {
    let id = InstanceId { trial: index, seed: config.trial_seed(index) };
    let reports = match (config.mode, config.style) {
        (SuiteMode::Float, _) => evaluate::<f64>(config, id),
        (SuiteMode::Exact, InstanceStyle::WitnessOne) => evaluate::<Quad3>(config, id),
        (SuiteMode::Exact, _) => evaluate::<Rational>(config, id),
    };
    (id, reports)
}

/// Runs all trials in parallel; the report does not depend on scheduling.
pub fn run_suite(config: &TrialConfig) -> Result<VerificationReport> {
    config.validate()?;
    let start = Instant::now();
    let mut claims = config.claims.clone();
    claims.sort();
    claims.dedup();
    let config = TrialConfig { claims, ..config.clone() };
    let results: Vec<_> = (0..config.trials).into_par_iter().map(|i| run_trial(&config, i)).collect();
    Ok(aggregate(&config, &results, start.elapsed().as_millis() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_echoes_config() {
        let cfg = TrialConfig { trials: 0, ..TrialConfig::default() };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.config, cfg);
        assert!(r.claims.iter().all(|c| c.instances == 0 && c.worst_margin.is_none()));
        assert_eq!(r.v_tau_range, None);
    }

    #[test]
    fn trial_seeds_differ() {
        let cfg = TrialConfig::default();
        assert_ne!(cfg.trial_seed(0), cfg.trial_seed(1));
        assert_eq!(cfg.trial_seed(3), cfg.trial_seed(3));
    }

    #[test]
    fn counts_add_up() {
        let cfg = TrialConfig { trials: 4, seed: 7, ..TrialConfig::default() };
        let r = run_suite(&cfg).unwrap();
        for c in &r.claims {
            assert_eq!(c.passes + c.skips + c.violations, c.instances);
            assert_eq!(c.instances, 4);
        }
        assert_eq!(r.violations(), 0);
    }

    #[test]
    fn invalid_configs() {
        assert!(run_suite(&TrialConfig { dim: 1, ..TrialConfig::default() }).is_err());
        assert!(run_suite(&TrialConfig { dim: 4, mode: SuiteMode::Exact, ..TrialConfig::default() }).is_err());
    }
}
