//! Command-line surface. Exit codes: 0 all pass, 1 a violation or failed certificate, 2 bad input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::io::{body_kind, lattice_kind, parse_body, parse_lattice};
use crate::harness::{emit_report, run_suite, CdTable, InstanceStyle, ReportFormat, SuiteMode, TrialConfig};
use crate::lattice::{successive_minima, Lattice};
use crate::numeric::{pow2, Field, Quad3, Rational, Scalar, ScalarKind, ToleranceConfig};
use crate::sections::{cube_section_volume, ScaledRoot};
use crate::transference::ClaimId;
use crate::witness::sharpness_report;

#[derive(Debug, Parser)]
#[command(name = "geonum", version, about = "Successive minima and transference checks for parallelepipeds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomized theorem suite.
    Verify(VerifyArgs),
    /// Certify the three-dimensional extremal examples.
    Witness(WitnessArgs),
    /// Tabulate c_d and its bracket.
    Cd(CdArgs),
    /// Central section of the cube orthogonal to a direction.
    Section(SectionArgs),
    /// Successive minima of a stored body and lattice.
    Minima(MinimaArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "float")]
    pub mode: String,
    /// Comma-separated claim ids; all claims when omitted.
    #[arg(long)]
    pub claims: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub tau_samples: usize,
    #[arg(long, default_value = "random")]
    pub style: String,
    #[arg(long, default_value_t = ToleranceConfig::default().rel_slack)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, default_value = "1/2")]
    pub epsilon: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct CdArgs {
    #[arg(long, default_value_t = 3)]
    pub dmin: usize,
    #[arg(long, default_value_t = 16)]
    pub dmax: usize,
    #[arg(long, default_value = "csv")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct SectionArgs {
    #[arg(long)]
    pub dim: usize,
    /// Comma-separated coordinates in scalar syntax.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: String,
}

#[derive(Debug, Args)]
pub struct MinimaArgs {
    #[arg(long)]
    pub body: PathBuf,
    /// Basis file; the integer lattice when omitted.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
}

/// Text to write and whether every check passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
    pub out: Option<PathBuf>,
}

pub fn execute(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Witness(a) => witness(a),
        Command::Cd(a) => {
            let text = emit_report(&CdTable::new(a.dmin, a.dmax)?, a.format.parse()?)?;
            Ok(Output { text, ok: true, out: None })
        }
        Command::Section(a) => Ok(Output { text: section(&a)?, ok: true, out: None }),
        Command::Minima(a) => Ok(Output { text: minima(&a)?, ok: true, out: None }),
    }
}

fn verify(a: VerifyArgs) -> Result<Output> {
    let format: ReportFormat = a.format.parse()?;
    let claims = match &a.claims {
        Some(s) => ClaimId::parse_list(s)?,
        None => ClaimId::ALL.to_vec(),
    };
    let config = TrialConfig {
        dim: a.dim,
        trials: a.trials,
        seed: a.seed,
        mode: a.mode.parse::<SuiteMode>()?,
        claims,
        tau_samples: a.tau_samples,
        tolerance: ToleranceConfig::new(a.tolerance, ToleranceConfig::default().strict_margin)?,
        style: a.style.parse::<InstanceStyle>()?,
        ..TrialConfig::default()
    };
    let report = run_suite(&config)?;
    Ok(Output { text: emit_report(&report, format)?, ok: report.violations() == 0, out: a.out })
}

fn witness(a: WitnessArgs) -> Result<Output> {
    let format: ReportFormat = a.format.parse()?;
    let eps: Rational = match a.epsilon.parse::<Scalar>()? {
        Scalar::Rational(q) => q,
        other => return Err(Error::Invalid(format!("ε = {other} must be rational"))),
    };
    match sharpness_report(&eps) {
        Ok(r) => Ok(Output { text: emit_report(&r, format)?, ok: true, out: a.out }),
        Err(e @ Error::WitnessMismatch { .. }) => Ok(Output { text: format!("{e}\n"), ok: false, out: a.out }),
        Err(e) => Err(e),
    }
}

fn section(a: &SectionArgs) -> Result<String> {
    let parts = a.direction.split(',').map(str::parse::<Scalar>).collect::<Result<Vec<_>>>()?;
    if parts.len() != a.dim {
        return Err(Error::Shape(format!("direction has {} coordinates, expected {}", parts.len(), a.dim)));
    }
    let kind = parts.iter().map(Scalar::kind).fold(ScalarKind::Rational, |acc, k| match (acc, k) {
        (ScalarKind::Float, _) | (_, ScalarKind::Float) => ScalarKind::Float,
        (ScalarKind::Quad3, _) | (_, ScalarKind::Quad3) => ScalarKind::Quad3,
        _ => ScalarKind::Rational,
    });
    match kind {
        ScalarKind::Rational => {
            let (vol, v) = section_values::<Rational>(&parts)?;
            Ok(section_text(&vol.simplified(), &v.simplified()))
        }
        ScalarKind::Quad3 => {
            let (vol, v) = section_values::<Quad3>(&parts)?;
            Ok(section_text(&vol, &v))
        }
        ScalarKind::Float => {
            let floats: Vec<Scalar> = parts.iter().map(Scalar::to_float).collect();
            let (vol, v) = section_values::<f64>(&floats)?;
            Ok(format!("volume = {:.15}\nv = {:.15}\n", vol.to_f64(), v.to_f64()))
        }
    }
}

fn section_values<T: Field>(parts: &[Scalar]) -> Result<(ScaledRoot<T>, ScaledRoot<T>)> {
    let a = parts.iter().map(Scalar::to_field).collect::<Result<Vec<T>>>()?;
    let vol = cube_section_volume(&a)?;
    let v = vol.scale(&pow2::<T>(1 - a.len() as i32));
    Ok((vol, v))
}

fn section_text<T: Field>(vol: &ScaledRoot<T>, v: &ScaledRoot<T>) -> String {
    let show = |x: &ScaledRoot<T>| x.to_field().map_or_else(|| x.to_string(), |y| y.to_string());
    format!("volume = {} ≈ {:.15}\nv = {} ≈ {:.15}\n", show(vol), vol.to_f64(), show(v), v.to_f64())
}

fn minima(a: &MinimaArgs) -> Result<String> {
    let body_text = std::fs::read_to_string(&a.body)?;
    let lattice_text = a.lattice.as_ref().map(std::fs::read_to_string).transpose()?;
    let mut kind = body_kind(&body_text)?;
    if let Some(t) = &lattice_text {
        kind = match (kind, lattice_kind(t)?) {
            (ScalarKind::Float, _) | (_, ScalarKind::Float) => ScalarKind::Float,
            (ScalarKind::Quad3, _) | (_, ScalarKind::Quad3) => ScalarKind::Quad3,
            _ => ScalarKind::Rational,
        };
    }
    match kind {
        ScalarKind::Rational => minima_in::<Rational>(&body_text, lattice_text.as_deref(), a.k),
        ScalarKind::Quad3 => minima_in::<Quad3>(&body_text, lattice_text.as_deref(), a.k),
        ScalarKind::Float => minima_in::<f64>(&body_text, lattice_text.as_deref(), a.k),
    }
}

fn minima_in<T: Field>(body: &str, lattice: Option<&str>, k: Option<usize>) -> Result<String> {
    let body = parse_body::<T>(body)?;
    let lattice = match lattice {
        Some(t) => parse_lattice::<T>(t)?,
        None => Lattice::integer(body.dim()),
    };
    let profile = successive_minima(&body, &lattice, k.unwrap_or(body.dim()))?;
    let mut s = String::new();
    for (i, (v, w)) in profile.values.iter().zip(&profile.witnesses).enumerate() {
        let w: Vec<String> = w.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "mu{} = {} ≈ {:.15}  at ({})", i + 1, v, v.to_f64(), w.join(","));
    }
    Ok(s)
}

/// Parses arguments, runs, writes the output and maps the result to an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(out) => {
            match &out.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
