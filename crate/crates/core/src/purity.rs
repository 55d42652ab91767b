//! Purity as agreement between the three-valued and two-valued facet semantics.
//!
//! A model is pure iff every formula is defined at every facet and gets the
//! same verdict from both semantics. At a facet missing agent `a` the formula
//! `¬p_a` (or `¬K̂_a ⊤` when `a` owns no atom) is undefined three-valued yet
//! true two-valued.

use serde::Serialize;

use crate::complex::SimplicialModel;
use crate::formula::{Formula, Group, TopPolicy};
use crate::semantics2::eval2_facet;
use crate::semantics3::{eval3, SemanticsMode, Truth3};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityWitness {
    pub facet: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_name: Option<String>,
    pub agent: String,
    pub formula: String,
    pub three_valued: Truth3,
    pub two_valued: bool,
}

/// The formula separating the semantics at a facet where `agent` is dead.
pub fn impurity_witness(model: &SimplicialModel, agent: usize) -> Formula {
    let sig = model.signature();
    let name = &model.agents()[agent];
    let first_atom = sig.atoms_of(name).next().cloned();
    match first_atom {
        Some(p) => Formula::not(Formula::Local(p)),
        None => {
            let top = sig.top(TopPolicy::Glocal).expect("glocal top always exists");
            Formula::not(Formula::diamond(Group::singleton(name.clone()), top))
        }
    }
}

/// One witness per agent missing from some facet, at the first such facet.
/// Empty iff the model is pure.
pub fn purity_witnesses(model: &SimplicialModel) -> Vec<PurityWitness> {
    let mut out = Vec::new();
    for (agent, name) in model.agents().iter().enumerate() {
        let Some(pos) = model
            .facets()
            .iter()
            .position(|&x| !model.colors(x).contains(agent))
        else {
            continue;
        };
        let x = model.facets()[pos];
        let f = impurity_witness(model, agent);
        out.push(PurityWitness {
            facet: model.vertex_ids(x).into_iter().map(str::to_owned).collect(),
            facet_name: model.facet_name(pos).map(str::to_owned),
            agent: name.0.clone(),
            formula: crate::formula::print(&f),
            three_valued: eval3(model, x, &f, SemanticsMode::Facet).expect("witness resolves"),
            two_valued: eval2_facet(model, x, &f).expect("witness resolves"),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelgen::fixtures;

    #[test]
    fn pure_fixture_has_no_witness() {
        assert!(purity_witnesses(&fixtures::model("Cdprime")).is_empty());
    }

    #[test]
    fn c_is_impure_at_x_for_agent_c() {
        let w = purity_witnesses(&fixtures::model("C"));
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].facet_name.as_deref(), Some("X"));
        assert_eq!(w[0].agent, "c");
        assert_eq!(w[0].formula, "~p_c");
        assert_eq!(w[0].three_valued, Truth3::Undefined);
        assert!(w[0].two_valued);
    }

    #[test]
    fn fig1ix_has_witnesses_for_both_dead_agents() {
        let w = purity_witnesses(&fixtures::model("Fig1ix"));
        let agents: Vec<&str> = w.iter().map(|w| w.agent.as_str()).collect();
        assert_eq!(agents, ["b", "c"]);
        assert!(w.iter().all(|w| w.three_valued == Truth3::Undefined && w.two_valued));
    }
}
