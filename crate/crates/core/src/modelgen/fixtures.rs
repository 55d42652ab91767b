//! Named models used as golden fixtures.
//!
//! Vertex `0_a` is agent `a` with `p_a` false, `1_a` with `p_a` true; a prime
//! marks a second vertex with the same label. The left facet is named `X` and
//! the right one `Y` (primed in `Cprime` and `Cdprime`).

use std::collections::BTreeMap;

use crate::complex::{validate_model, NamedFacet, RawFacet, RawModel, RawVertex, SimplicialModel};

pub const NAMES: [&str; 7] = ["C", "Cprime", "Cdprime", "Cminus", "Fig1i", "Fig1viii", "Fig1ix"];

fn vertex(id: &str) -> RawVertex {
    let (value, agent) = id.split_once('_').expect("fixture ids look like 0_a");
    let agent = agent.trim_end_matches('\'').to_owned();
    RawVertex {
        id: id.to_owned(),
        true_atoms: if value == "1" { vec![format!("p_{agent}")] } else { vec![] },
        agent,
    }
}

fn build(agents: &[&str], facets: &[(&str, &[&str])]) -> RawModel {
    let mut ids: Vec<&str> = facets.iter().flat_map(|(_, vs)| vs.iter().copied()).collect();
    ids.sort_unstable();
    ids.dedup();
    RawModel {
        agents: agents.iter().map(|a| a.to_string()).collect(),
        atoms: agents
            .iter()
            .map(|a| (a.to_string(), vec![format!("p_{a}")]))
            .collect::<BTreeMap<_, _>>(),
        vertices: ids.into_iter().map(vertex).collect(),
        facets: facets
            .iter()
            .map(|(name, vs)| {
                RawFacet::Named(NamedFacet {
                    name: name.to_string(),
                    vertices: vs.iter().map(|v| v.to_string()).collect(),
                })
            })
            .collect(),
    }
}

/// The raw description of a named fixture.
pub fn raw(name: &str) -> Option<RawModel> {
    const ABC: &[&str] = &["a", "b", "c"];
    Some(match name {
        "C" => build(ABC, &[("X", &["0_a", "1_b"]), ("Y", &["0_a", "0_b", "1_c"])]),
        "Cprime" => build(ABC, &[("X'", &["0_a", "0_b'"]), ("Y'", &["0_a", "0_b", "1_c"])]),
        "Cdprime" => build(ABC, &[("Y''", &["0_a", "0_b", "1_c"])]),
        "Cminus" => build(&["a", "b"], &[("X", &["0_a", "1_b"])]),
        "Fig1i" => build(ABC, &[("X", &["0_a", "1_b", "1_c'"]), ("Y", &["0_a", "0_b", "1_c"])]),
        "Fig1viii" => build(ABC, &[("X", &["0_a", "1_b", "0_c"]), ("Y", &["0_a", "0_b", "1_c"])]),
        "Fig1ix" => build(ABC, &[("X", &["0_a", "1_b"]), ("Y", &["0_a", "1_c"])]),
        _ => return None,
    })
}

/// The validated fixture `name`.
///
/// # Panics
/// If `name` is not one of [`NAMES`].
pub fn model(name: &str) -> SimplicialModel {
    let raw = raw(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    validate_model(&raw).expect("fixtures are well formed")
}

/// Every fixture, in [`NAMES`] order.
pub fn all() -> Vec<(&'static str, SimplicialModel)> {
    NAMES.iter().map(|&n| (n, model(n))).collect()
}
