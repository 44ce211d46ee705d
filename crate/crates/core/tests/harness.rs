//! Determinism, calibration and the command line.

use std::process::Command;

use geonum::harness::{aggregate, emit_report, gen_instance, run_suite, run_trial, InstanceStyle, ReportFormat, SuiteMode, TrialConfig};
use geonum::lattice::{successive_minima, Lattice};
use geonum::transference::ClaimId;

fn small(dim: usize, seed: u64) -> TrialConfig {
    TrialConfig { dim, trials: 12, seed, tau_samples: 4, ..TrialConfig::default() }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cfg = small(3, 99);
    let a = emit_report(&run_suite(&cfg).unwrap().without_runtime(), ReportFormat::Json).unwrap();
    let b = emit_report(&run_suite(&cfg).unwrap().without_runtime(), ReportFormat::Json).unwrap();
    assert_eq!(a, b);
}

#[test]
fn trial_order_does_not_matter() {
    let cfg = small(4, 5);
    let parallel = run_suite(&cfg).unwrap().without_runtime();
    // reversed evaluation, then restored to trial order
    let mut results: Vec<_> = (0..cfg.trials).rev().map(|i| run_trial(&parallel.config, i)).collect();
    results.reverse();
    assert_eq!(aggregate(&parallel.config, &results, 0), parallel);
}

#[test]
fn different_seeds_give_different_instances() {
    let a = gen_instance::<f64>(4, 1, InstanceStyle::Random).unwrap();
    let b = gen_instance::<f64>(4, 2, InstanceStyle::Random).unwrap();
    assert_ne!(a, b);
}

#[test]
fn pseudo_compound_is_calibrated() {
    for d in 3..=5 {
        for seed in 0..100 {
            let body = gen_instance::<f64>(d, seed, InstanceStyle::Random).unwrap();
            let star = body.pseudo_compound().unwrap();
            let m = successive_minima(&star, &Lattice::integer(d), 1).unwrap();
            assert!((m.get(1) - 1.0).abs() <= 1e-9, "d = {d}, seed = {seed}: {}", m.get(1));
        }
    }
}

#[test]
fn exact_calibration_stays_at_most_one() {
    use geonum::numeric::{Field, Rational};
    for seed in 0..20 {
        let body = gen_instance::<Rational>(3, seed, InstanceStyle::Random).unwrap();
        let m = successive_minima(&body.pseudo_compound().unwrap(), &Lattice::integer(3), 1).unwrap();
        let v = m.get(1).to_f64();
        assert!(v <= 1.0 && v > 1.0 - 1e-5, "seed = {seed}: {v}");
    }
}

#[test]
fn t7_is_skipped_on_the_second_witness() {
    let cfg = TrialConfig {
        trials: 1,
        mode: SuiteMode::Exact,
        style: InstanceStyle::WitnessTwo,
        claims: vec![ClaimId::T7],
        ..TrialConfig::default()
    };
    let rep = run_suite(&cfg).unwrap();
    let s = rep.summary(ClaimId::T7).unwrap();
    assert_eq!((s.skips, s.violations), (1, 0));
}

#[test]
fn empty_report_serializes() {
    let rep = run_suite(&TrialConfig { trials: 0, ..TrialConfig::default() }).unwrap().without_runtime();
    let json = emit_report(&rep, ReportFormat::Json).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["claims"][0]["instances"], 0);
    assert!(emit_report(&rep, ReportFormat::Csv).unwrap().lines().count() >= 1);
}

fn geonum(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_geonum")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn command_line_exit_codes() {
    let (code, text) = geonum(&["witness"]);
    assert_eq!(code, 0);
    assert!(text.contains("mu2(Pi, L2) = 5/4"), "{text}");
    assert_eq!(geonum(&["witness", "--epsilon", "3/4"]).0, 2);
    assert_eq!(geonum(&["no-such-command"]).0, 2);
    let (code, text) = geonum(&["verify", "--dim", "3", "--trials", "3", "--seed", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(text.contains("\"claims\""));
    let (code, text) = geonum(&["cd", "--dmin", "3", "--dmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 3, "{text}");
}
