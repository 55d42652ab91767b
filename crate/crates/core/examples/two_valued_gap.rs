// Why the two-valued face semantics is rejected on impure complexes.
//
// `<K a> T -> <K a> ~p_b` holds at every face of every two-agent model with
// up to two facets under the two-valued face semantics: at any face where
// `a` is alive the vertex of `a` alone is a witness where `p_b` is false.
// At the facet of `Cminus` it fails, so face and facet validity differ.

use simplicheck::modelgen::fixtures;
use simplicheck::semantics2::check_validity2;
use simplicheck::{eval2_face, eval2_facet, parse, FamilySpec, ModelFamily, ModelSpec, SemanticsMode, TopPolicy};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    let family = ModelFamily::build(&FamilySpec::exhaustive(ModelSpec::new(2, 1, 2)))?;
    let sig = family.models()[0].signature();
    let f = parse("<K a> T -> <K a> ~p_b", &sig, TopPolicy::TwoValuedLocal)?;

    let face = check_validity2(&f, &family, SemanticsMode::Face);
    let facet = check_validity2(&f, &family, SemanticsMode::Facet);
    println!("{} models; face valid: {}; facet valid: {}", family.len(), face.passed(), facet.passed());
    assert!(face.passed() && !facet.passed());

    let cminus = fixtures::model("Cminus");
    let x = cminus.facet_by_name("X")?;
    let at_facet = eval2_facet(&cminus, x, &f)?;
    let vertex = cminus.face_from_ids(&["0_a"])?;
    let at_vertex = eval2_face(&cminus, vertex, &f)?;
    println!("Cminus: facet X {at_facet}, vertex 0_a {at_vertex}");
    assert!(!at_facet && at_vertex);

    // Truth is not inherited upwards: `~p_c` holds at the edge 0_a-0_b of Y'
    // because c is absent there, and fails at Y' itself.
    let cprime = fixtures::model("Cprime");
    let g = parse("~p_c", &cprime.signature(), TopPolicy::TwoValuedLocal)?;
    let edge = eval2_face(&cprime, cprime.face_from_ids(&["0_a", "0_b"])?, &g)?;
    let triangle = eval2_face(&cprime, cprime.facet_by_name("Y'")?, &g)?;
    println!("Cprime: ~p_c {edge} at edge 0_a-0_b, {triangle} at Y'");
    assert!(edge && !triangle);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
