use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::suite::VerificationReport;
use crate::error::{Error, Result};
use crate::transference::{c_d, c_d_bounds};
use crate::witness::SharpnessReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// A document that can be written in every [`ReportFormat`].
pub trait Emit: Serialize {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>);
    fn text(&self) -> String;
}

pub fn emit_report<R: Emit + ?Sized>(report: &R, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Invalid(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let (header, rows) = report.csv_rows();
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Invalid(e.to_string());
            w.write_record(&header).map_err(io)?;
            for row in rows {
                w.write_record(&row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
        }
        ReportFormat::Text => Ok(report.text()),
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl Emit for VerificationReport {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header =
            vec!["claim", "instances", "passes", "skips", "violations", "worst_margin", "worst_trial", "worst_seed"];
        let rows = self
            .claims
            .iter()
            .map(|c| {
                vec![
                    c.claim.to_string(),
                    c.instances.to_string(),
                    c.passes.to_string(),
                    c.skips.to_string(),
                    c.violations.to_string(),
                    opt(c.worst_margin),
                    opt(c.worst_instance.map(|i| i.trial)),
                    opt(c.worst_instance.map(|i| i.seed)),
                ]
            })
            .collect();
        (header, rows)
    }

    fn text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "d = {}, trials = {}, seed = {}, mode = {}, style = {}, tau samples = {}",
            c.dim, c.trials, c.seed, c.mode, c.style, c.tau_samples
        );
        for cl in &self.claims {
            let _ = write!(
                s,
                "{:<9} pass {:>5}  skip {:>5}  violation {:>3}",
                cl.claim.as_str(),
                cl.passes,
                cl.skips,
                cl.violations
            );
            if let (Some(m), Some(id)) = (cl.worst_margin, cl.worst_instance) {
                let _ = write!(s, "  worst margin {m:.3e} (trial {})", id.trial);
            }
            s.push('\n');
        }
        if let Some((lo, hi)) = self.v_tau_range {
            let _ = writeln!(s, "v_tau in [{lo:.6}, {hi:.6}]");
        }
        let _ = writeln!(s, "violations: {}", self.violations());
        s
    }
}

impl Emit for SharpnessReport {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .minima
            .iter()
            .map(|m| {
                let w: Vec<String> = m.witness.iter().map(i64::to_string).collect();
                vec![m.name.clone(), m.k.to_string(), m.value.clone(), w.join(" ")]
            })
            .collect();
        (vec!["pair", "k", "value", "witness"], rows)
    }

    fn text(&self) -> String {
        self.to_text()
    }
}

/// One row of the `c_d` table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdRow {
    pub d: usize,
    pub c_d: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdTable {
    pub rows: Vec<CdRow>,
}

impl CdTable {
    pub fn new(dmin: usize, dmax: usize) -> Result<Self> {
        if dmin > dmax {
            return Err(Error::Invalid(format!("empty range {dmin}..{dmax}")));
        }
        let rows = (dmin..=dmax)
            .map(|d| {
                let (lower, upper) = c_d_bounds(d)?;
                Ok(CdRow { d, c_d: c_d(d)?, lower, upper })
            })
            .collect::<Result<_>>()?;
        Ok(CdTable { rows })
    }
}

impl Emit for CdTable {
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .rows
            .iter()
            .map(|r| vec![r.d.to_string(), format!("{:.15}", r.c_d), format!("{:.15}", r.lower), format!("{:.15}", r.upper)])
            .collect();
        (vec!["d", "c_d", "lower", "upper"], rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = writeln!(s, "d = {:>4}  {:.12} < c_d = {:.12} < {:.12}", r.d, r.lower, r.c_d, r.upper);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_suite, TrialConfig};
    use crate::numeric::Rational;
    use crate::witness::sharpness_report;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = run_suite(&TrialConfig { trials: 2, ..TrialConfig::default() }).unwrap();
        let a = emit_report(&r, ReportFormat::Json).unwrap();
        let back: VerificationReport = serde_json::from_str(&a).unwrap();
        assert_eq!(emit_report(&back, ReportFormat::Json).unwrap(), a);
    }

    #[test]
    fn csv_has_one_row_per_claim() {
        let r = run_suite(&TrialConfig { trials: 0, ..TrialConfig::default() }).unwrap();
        let csv = emit_report(&r, ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + r.claims.len());
    }

    #[test]
    fn witness_text() {
        let r = sharpness_report(&Rational::new(1.into(), 2.into())).unwrap();
        let t = emit_report(&r, ReportFormat::Text).unwrap();
        assert!(t.contains("2/3*sqrt3") && t.contains("5/4"));
        assert!(emit_report(&r, ReportFormat::Json).unwrap().contains("\"identities\""));
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("yaml".parse::<ReportFormat>(), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn cd_table() {
        let t = CdTable::new(3, 6).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows.iter().all(|r| r.lower < r.c_d && r.c_d < r.upper));
        assert!(CdTable::new(2, 4).is_err());
    }
}
