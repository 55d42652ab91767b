// Formula syntax: parsing, core and sugared printing, language classes.

use simplicheck::formula::{classify, print_sugared};
use simplicheck::{parse, print, Signature, TopPolicy};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    let sig = Signature::standard(3, 1);
    for text in ["[K a] p_c -> p_c", "<D{a,b}> ~@c", "p_b <-> [K b] p_b", "@a <-> <K a> T"] {
        let f = parse(text, &sig, TopPolicy::Glocal)?;
        let core = print(&f);
        assert_eq!(parse(&core, &sig, TopPolicy::Forbidden)?, f);
        let class = classify(&f);
        println!("{text}\n  core:    {core}\n  sugared: {}\n  class:   {class}", print_sugared(&f, None));
    }
    match parse("[K d] p_a", &sig, TopPolicy::Glocal) {
        Err(e) => println!("rejected: {e}"),
        Ok(f) => return Err(format!("unexpected parse {f}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
