//! Runs every registered scenario and prints each assertion.
//!
//! `cargo run --release --example scenarios -- [seed] [scale]`

use fuzzy_bv::harness::run_all;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20240601);
    let scale = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let reports = run_all(seed, scale)?;
    for r in &reports {
        println!(
            "{:<18} {}  ({:.2?})",
            r.name.as_str(),
            if r.passed { "PASS" } else { "FAIL" },
            r.wall_time
        );
        for a in &r.assertions {
            let mark = if a.pass { " " } else { "!" };
            let rel = serde_json::to_value(a.relation)?;
            println!(
                "  {mark} {:<62} {:>14.6e} {} {:.6e} {}",
                a.name,
                a.measured,
                rel.as_str().unwrap_or("?"),
                a.threshold,
                a.detail
            );
        }
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err("some scenarios failed".into())
    }
}
