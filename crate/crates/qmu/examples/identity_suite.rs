//! Run the full identity registry programmatically and print the report,
//! using the same machinery behind `qmu suite`.
//!
//! Run with: cargo run --release --example identity_suite

use qmu::suite::{run_suite, Status, SuiteConfig, TolProfile};

fn main() {
    let config = SuiteConfig {
        q_values: vec![0.15, 0.25, 0.35],
        points: 20,
        seed: 42,
        tol_profile: TolProfile::Default,
    };
    let report = run_suite(&config);
    for r in &report.reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!(
            "{status}  {:<32} points={:<4} skipped={:<3} max_abs={:.3e} max_rel={:.3e}",
            r.identity_id,
            r.points_tested,
            r.points_skipped,
            r.max_abs_residual,
            r.max_rel_residual
        );
    }
    let passed = report
        .reports
        .iter()
        .filter(|r| r.status == Status::Pass)
        .count();
    println!("{passed}/{} identities passed", report.reports.len());
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
