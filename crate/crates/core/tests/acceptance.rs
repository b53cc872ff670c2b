//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use hyperop_core::verify::{run_check, Check, Status, VerifyConfig, CHECK_IDS};
use rayon::prelude::*;

fn criterion(id: &str) -> &str {
    id.split('-').next().unwrap_or(id)
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let checks: Vec<Check> = CHECK_IDS.par_iter().map(|id| run_check(id, &cfg)).collect();
    println!("acceptance, seed {}", cfg.seed);
    let mut failed = 0;
    for n in 1..=10 {
        let parts: Vec<&Check> = checks.iter().filter(|c| criterion(&c.check_id) == n.to_string()).collect();
        let fail = parts.iter().any(|c| c.status == Status::Fail);
        failed += fail as usize;
        let ms: u128 = parts.iter().map(|c| c.elapsed_ms).sum();
        let notes: Vec<String> = parts
            .iter()
            .map(|c| {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skipped",
                };
                format!("[{} {tag}] {}", c.check_id, c.details)
            })
            .collect();
        println!("criterion {n:>2}: {} ({ms} ms) {}", if fail { "FAIL" } else { "PASS" }, notes.join(" "));
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
