// Three-valued verdicts on three agents, one of them dead at edge `X`.
//
// In `C` the edge `X = {0_a, 1_b}` lacks agent `c` and the triangle
// `Y = {0_a, 0_b, 1_c}` has everyone. Statements about `c` at `X` are
// undefined, yet `a` knows `p_c` there.

use simplicheck::modelgen::fixtures;
use simplicheck::{eval3, parse, SemanticsMode, SimplicialModel, TopPolicy, Truth3};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn verdict(model: &SimplicialModel, facet: &str, text: &str) -> Result<Truth3> {
    let f = parse(text, &model.signature(), TopPolicy::Glocal)?;
    let x = model.facet_by_name(facet)?;
    Ok(eval3(model, x, &f, SemanticsMode::Face)?)
}

pub fn run_example() -> Result<()> {
    let c = fixtures::model("C");
    let cases = [
        ("X", "p_c", Truth3::Undefined),
        ("X", "~p_c", Truth3::Undefined),
        ("X", "<K a> p_c", Truth3::True),
        ("X", "[K a] p_c", Truth3::True),
        ("X", "[K a] p_c -> p_c", Truth3::Undefined),
        ("X", "p_b & ~p_a", Truth3::True),
        ("Y", "<K a> p_b", Truth3::True),
        ("Y", "[D{a,b}] ~p_b", Truth3::True),
        ("X", "[K a] ~@c", Truth3::False),
        ("X", "[D{a,b}] ~@c", Truth3::True),
    ];
    for (facet, text, expected) in cases {
        let got = verdict(&c, facet, text)?;
        println!("C, {facet}: {text:<18} {got}");
        assert_eq!(got, expected, "{text} at {facet}");
    }

    // Global atoms separate models that no local formula can tell apart.
    let primed = verdict(&fixtures::model("Cprime"), "Y'", "<K a> ~@c")?;
    let double = verdict(&fixtures::model("Cdprime"), "Y''", "<K a> ~@c")?;
    println!("C', Y': <K a> ~@c {primed}; C'', Y'': <K a> ~@c {double}");
    assert_eq!((primed, double), (Truth3::True, Truth3::False));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
