//! File formats, JSON reports and verification campaigns on top of
//! `codegree-core`.

pub mod campaign;
pub mod format;
pub mod json;
pub mod oracle;
pub mod report;
pub mod suite;

use std::time::Instant;

use serde_json::json;

use campaign::{Campaign, Check};
use report::Report;

/// Runs `f` on a pool of `workers` threads (`0` lets rayon decide).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool starts")
        .install(f)
}

/// Runs `checks` in order and collects their verdicts into one report.
pub fn run_checks(command: &str, suite: &str, checks: &[Check], campaign: &Campaign, workers: usize) -> Report {
    let start = Instant::now();
    let names: Vec<&str> = checks.iter().map(|c| c.name()).collect();
    let mut report = Report::new(command, json!({"suite": suite, "checks": names, "campaign": campaign}));
    with_workers(workers, || {
        for check in checks {
            report.verdicts.extend(check.run(campaign));
        }
    });
    report.timing_ms = start.elapsed().as_millis() as u64;
    report
}
