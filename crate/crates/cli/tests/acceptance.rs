//! Acceptance criteria, one PASS/FAIL line each. Criteria whose printed oracle
//! disagrees with the exact computation stay red; the test pins that set so any
//! change in either direction is noticed.

use std::collections::BTreeSet;
use std::time::Instant;

use nfc_cli::verify::{run_suite, Suite};

/// Printed cubic coefficients and survivor families that the exact computation
/// contradicts (see the README).
const KNOWN_RED: [u8; 3] = [1, 2, 9];

fn clip(s: &str) -> String {
    const MAX: usize = 600;
    if s.chars().count() <= MAX {
        s.to_string()
    } else {
        format!("{}...", s.chars().take(MAX).collect::<String>())
    }
}

fn main() {
    let mut red = BTreeSet::new();
    for suite in Suite::ALL {
        let start = Instant::now();
        let rep = run_suite(suite);
        let status = if rep.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {:>2} {} [{}; {} checks; {:.1}s]",
            suite.criterion(),
            suite.title(),
            suite.name(),
            rep.checks,
            start.elapsed().as_secs_f64()
        );
        for f in &rep.failures {
            println!("       {}", clip(f));
        }
        if !rep.passed() {
            red.insert(suite.criterion());
        }
    }
    let expected: BTreeSet<u8> = KNOWN_RED.into_iter().collect();
    if red != expected {
        eprintln!("failing criteria {red:?} differ from the documented set {expected:?}");
        std::process::exit(1);
    }
    println!("acceptance: red set matches {expected:?}");
}
