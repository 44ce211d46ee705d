//! A small seeded run of the randomized theorem suite.

use geonum::harness::{emit_report, run_suite, ReportFormat, TrialConfig};

fn main() -> geonum::error::Result<()> {
    let cfg = TrialConfig { dim: 4, trials: 20, seed: 2024, ..TrialConfig::default() };
    let report = run_suite(&cfg)?;
    print!("{}", emit_report(&report, ReportFormat::Text)?);
    if report.violations() > 0 {
        std::process::exit(1);
    }
    Ok(())
}
