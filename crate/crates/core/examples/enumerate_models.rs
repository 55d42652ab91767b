// Model families: exhaustive up to isomorphism, or seeded random.

use simplicheck::modelgen::{enumerate_models, projected_count, random_model};
use simplicheck::ModelSpec;

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn run_example() -> Result<()> {
    for max_facets in 1..=3 {
        let spec = ModelSpec::new(2, 1, max_facets);
        let models = enumerate_models(&spec)?;
        let impure = models.iter().filter(|m| !m.is_pure()).count();
        println!(
            "2 agents, 1 atom, <= {max_facets} facets: {} models ({impure} impure) from {} candidates",
            models.len(),
            projected_count(&spec)
        );
    }

    let spec = ModelSpec::new(3, 1, 3);
    let model = random_model(42, &spec)?;
    assert_eq!(model.to_json(), random_model(42, &spec)?.to_json());
    println!("random 3-agent model, seed 42:\n{}", model.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
