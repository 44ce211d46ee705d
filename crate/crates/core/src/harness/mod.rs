//! Random instances, the theorem suite, reports and file formats.

mod instance;
pub mod io;
mod report;
mod suite;

pub use instance::{gen_instance, random_unimodular, InstanceStyle};
pub use report::{emit_report, CdRow, CdTable, Emit, ReportFormat};
pub use suite::{aggregate, run_suite, run_trial, ClaimSummary, InstanceId, SuiteMode, TrialConfig, VerificationReport};
