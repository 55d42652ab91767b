// Bounded theorem checking over the exhaustive two-agent family.
//
// A pass means no counterexample among these models and formulas. Every
// counterexample carries the evaluations that exhibit it and replays.

use simplicheck::checker::{replay, run_all, Budget};
use simplicheck::{FamilySpec, ModelFamily, ModelSpec};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    let family = ModelFamily::build(&FamilySpec::exhaustive(ModelSpec::new(2, 1, 2)))?;
    let budget = Budget { seed: 7, count: 60, depth: 3 };
    for report in run_all(&family, &budget) {
        println!(
            "{} {}: {}",
            if report.passed() { "PASS" } else { "FAIL" },
            report.theorem_id,
            report.summary
        );
        assert!(report.passed());
        if let Some(cx) = &report.counterexample {
            replay(&report)?;
            println!("  replayed: {} at {:?} is {}, expected {}", cx.formula, cx.point, cx.actual, cx.expected);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
