//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so the lines always show up in `cargo test` output.

use std::process::ExitCode;
use std::time::Instant;

use coalg_core::report::{Detail, Verdict};
use coalg_core::suite::{criterion, summarize, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let details = criterion(c.number);
        let secs = start.elapsed().as_secs_f64();
        let line = summarize(c.number, &details);
        let in_time = c.limit.is_none_or(|l| secs < l);
        let pass = line.verdict.passed() && in_time;
        if !pass {
            failed += 1;
        }
        let limit = c.limit.map_or(String::new(), |l| format!(" (limit {l}s)"));
        println!(
            "criterion {:>2}: {} [{}] {:.2}s{limit} {}: {}",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            line.verdict,
            secs,
            c.title,
            line.message
        );
        for d in details.iter().filter(|d| d.verdict != Verdict::Ok) {
            print_detail(d);
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn print_detail(d: &Detail) {
    println!("    [{}] {}: {}", d.verdict, d.check, d.message);
}
