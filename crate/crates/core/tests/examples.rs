//! Every example under `examples/` runs to completion.

#[allow(dead_code)]
mod dead_agents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dead_agents.rs"));
}

#[test]
fn dead_agents_runs() {
    dead_agents::run_example().expect("dead_agents example should run");
}

#[allow(dead_code)]
mod two_valued_gap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/two_valued_gap.rs"));
}

#[test]
fn two_valued_gap_runs() {
    two_valued_gap::run_example().expect("two_valued_gap example should run");
}

#[allow(dead_code)]
mod translations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/translations.rs"));
}

#[test]
fn translations_runs() {
    translations::run_example().expect("translations example should run");
}

#[allow(dead_code)]
mod purity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/purity.rs"));
}

#[test]
fn purity_runs() {
    purity::run_example().expect("purity example should run");
}

#[allow(dead_code)]
mod theorem_harness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/theorem_harness.rs"));
}

#[test]
fn theorem_harness_runs() {
    theorem_harness::run_example().expect("theorem_harness example should run");
}

#[allow(dead_code)]
mod enumerate_models {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/enumerate_models.rs"));
}

#[test]
fn enumerate_models_runs() {
    enumerate_models::run_example().expect("enumerate_models example should run");
}

#[allow(dead_code)]
mod parse_and_print {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/parse_and_print.rs"));
}

#[test]
fn parse_and_print_runs() {
    parse_and_print::run_example().expect("parse_and_print example should run");
}
