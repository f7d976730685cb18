//! Acceptance suite: one PASS/FAIL line per claim group, with the failing
//! claims spelled out underneath. Exits nonzero when any group fails.

use regretlab::reproduce::{groups, Claim, Options};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

fn main() {
    let opts = Options { oracle: true };
    let mut failed = Vec::new();
    for group in groups() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (group.run)(&opts)));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(claims) => {
                let bad: Vec<&Claim> = claims.iter().filter(|c| !c.ok()).collect();
                let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
                println!("{} {} ({} claims, {:.1}s)", verdict, group.name, claims.len(), secs);
                for c in &claims {
                    if !c.ok() {
                        println!("     {}: computed {} / expected {}", c.id, c.computed, c.expected);
                        if c.oracle == Some(false) {
                            println!("     {}: oracle disagrees", c.id);
                        }
                    }
                }
                if !bad.is_empty() {
                    failed.push(group.name);
                }
            }
            Err(_) => {
                println!("FAIL {} (panicked after {:.1}s)", group.name, secs);
                failed.push(group.name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all groups pass");
    } else {
        println!("acceptance: {} group(s) fail: {}", failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}
