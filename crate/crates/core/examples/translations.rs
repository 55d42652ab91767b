// Definability and truth translations into the two-valued local language.
//
// `def(φ)` is two-valued true at a facet iff `φ` is defined there, and
// `sharp(φ)` iff `φ` is defined and true. `T` abbreviates `p_a | ~p_a`.

use simplicheck::formula::print_sugared;
use simplicheck::modelgen::fixtures;
use simplicheck::translate::{translate_def, translate_sharp, translation_top};
use simplicheck::{eval2_facet, eval3, parse, SemanticsMode, TopPolicy, Truth3};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    let model = fixtures::model("Fig1ix");
    let sig = model.signature();
    let top = translation_top(&sig);
    for text in ["[K a] p_b", "~p_a", "~@a", "[K a] p_b & [K a] p_c"] {
        let f = parse(text, &sig, TopPolicy::Glocal)?;
        let def = translate_def(&f, &top);
        let sharp = translate_sharp(&f, &top);
        println!("{text}");
        println!("  def:   {}", print_sugared(&def, Some(&top)));
        println!("  sharp: {}", print_sugared(&sharp, Some(&top)));
        for (i, &x) in model.facets().iter().enumerate() {
            let three = eval3(&model, x, &f, SemanticsMode::Facet)?;
            let (d, s) = (eval2_facet(&model, x, &def)?, eval2_facet(&model, x, &sharp)?);
            println!("  at {}: {three}; def {d}, sharp {s}", model.facet_name(i).unwrap_or("?"));
            assert_eq!(d, three.is_defined());
            assert_eq!(s, three == Truth3::True);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
