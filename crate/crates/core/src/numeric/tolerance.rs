use serde::{Deserialize, Serialize};

use super::Field;
use crate::error::{Error, Result};

/// Slack used by float comparisons. Exact kinds ignore it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative slack for `<=` style comparisons, scaled by `max(1, |bound|)`.
    pub rel_slack: f64,
    /// Margin `δ` required by strict hypotheses such as `μ₁ > 1`.
    pub strict_margin: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { rel_slack: 1e-9, strict_margin: 1e-6 }
    }
}

impl ToleranceConfig {
    pub fn new(rel_slack: f64, strict_margin: f64) -> Result<Self> {
        let t = ToleranceConfig { rel_slack, strict_margin };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(self.rel_slack) && ok(self.strict_margin) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("tolerances must be positive: {self:?}")))
        }
    }

    pub fn slack(&self, scale: f64) -> f64 {
        self.rel_slack * scale.abs().max(1.0)
    }

    /// `a <= b` up to slack.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(a.abs().max(b.abs()))
    }

    /// `a > b + δ`.
    pub fn strictly_greater(&self, a: f64, b: f64) -> bool {
        a > b + self.strict_margin
    }

    /// Exact `a <= b` for exact kinds, slack comparison for floats.
    pub fn le_field<T: Field>(&self, a: &T, b: &T) -> bool {
        if T::is_exact() {
            a.cmp_value(b) != std::cmp::Ordering::Greater
        } else {
            self.le(a.to_f64(), b.to_f64())
        }
    }

    /// Exact `a > b` for exact kinds, `a > b + δ` for floats.
    pub fn gt_field<T: Field>(&self, a: &T, b: &T) -> bool {
        if T::is_exact() {
            a.cmp_value(b) == std::cmp::Ordering::Greater
        } else {
            self.strictly_greater(a.to_f64(), b.to_f64())
        }
    }

    /// Whether a margin (bound minus attained value) counts as a violation.
    pub fn is_violation(&self, margin: f64, scale: f64) -> bool {
        margin < -self.slack(scale)
    }
}
