// Purity means the three- and two-valued facet semantics agree.
//
// Both facets of `Fig1ix` are edges, so every facet has the same dimension,
// yet each misses an agent. There `a` knows `p_b` and `p_c` three-valued,
// while two-valued `a` knows neither.

use simplicheck::modelgen::fixtures;
use simplicheck::purity::purity_witnesses;
use simplicheck::{eval2_facet, eval3, parse, SemanticsMode, TopPolicy, Truth3};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    for name in ["Cdprime", "C", "Fig1ix"] {
        let model = fixtures::model(name);
        let witnesses = purity_witnesses(&model);
        println!("{name}: {}", if model.is_pure() { "pure" } else { "impure" });
        for w in &witnesses {
            println!(
                "  facet {}, agent {}: {} is {} three-valued, {} two-valued",
                w.facet_name.as_deref().unwrap_or("?"),
                w.agent,
                w.formula,
                w.three_valued,
                w.two_valued
            );
        }
        assert_eq!(model.is_pure(), witnesses.is_empty());
    }

    let model = fixtures::model("Fig1ix");
    let sig = model.signature();
    let knows = parse("[K a] p_b & [K a] p_c", &sig, TopPolicy::Glocal)?;
    let ignorant = parse("~[K a] p_b & ~[K a] p_c", &sig, TopPolicy::Glocal)?;
    for &x in model.facets() {
        assert_eq!(eval3(&model, x, &knows, SemanticsMode::Facet)?, Truth3::True);
        assert!(eval2_facet(&model, x, &ignorant)?);
    }
    println!("Fig1ix: [K a] p_b & [K a] p_c valid three-valued, its negation-wise dual valid two-valued");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
