//! Formulas with names resolved to the indices of one model.

use thiserror::Error;

use crate::complex::{AgentSet, Face, SimplicialModel};
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("formula mentions agent `{0}` which the model does not declare")]
    UnknownAgent(String),
    #[error("formula mentions atom `{0}` which the model does not declare")]
    UnknownAtom(String),
    #[error("atom `{atom}` is owned by `{model_owner}` in the model, not `{formula_owner}`")]
    AtomOwnerMismatch {
        atom: String,
        model_owner: String,
        formula_owner: String,
    },
    #[error("{0} is not a face of the model")]
    EvaluationPointNotInModel(String),
    #[error("{0} is not a facet; facet semantics evaluates at facets only")]
    FacetRequired(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Resolved {
    Alive(usize),
    Atom { atom: usize, owner: usize },
    Not(Box<Resolved>),
    And(Box<Resolved>, Box<Resolved>),
    Diamond(AgentSet, Box<Resolved>),
}

pub fn resolve(model: &SimplicialModel, f: &Formula) -> Result<Resolved, EvalError> {
    Ok(match f {
        Formula::Global(a) => Resolved::Alive(
            model
                .agent_index(a)
                .ok_or_else(|| EvalError::UnknownAgent(a.0.clone()))?,
        ),
        Formula::Local(p) => {
            let atom = model
                .atom_index(&p.name)
                .ok_or_else(|| EvalError::UnknownAtom(p.name.clone()))?;
            let owner = model.atom_owner(atom);
            if model.agents()[owner] != p.owner {
                return Err(EvalError::AtomOwnerMismatch {
                    atom: p.name.clone(),
                    model_owner: model.agents()[owner].0.clone(),
                    formula_owner: p.owner.0.clone(),
                });
            }
            Resolved::Atom { atom, owner }
        }
        Formula::Not(g) => Resolved::Not(Box::new(resolve(model, g)?)),
        Formula::And(g, h) => Resolved::And(Box::new(resolve(model, g)?), Box::new(resolve(model, h)?)),
        Formula::Diamond(group, g) => {
            let mut mask = 0u64;
            for a in group.agents() {
                let i = model
                    .agent_index(a)
                    .ok_or_else(|| EvalError::UnknownAgent(a.0.clone()))?;
                mask |= 1 << i;
            }
            Resolved::Diamond(AgentSet(mask), Box::new(resolve(model, g)?))
        }
    })
}

pub(crate) fn check_face(model: &SimplicialModel, x: Face) -> Result<(), EvalError> {
    if model.is_face(x) && x.mask() >> model.vertices().len() == 0 {
        Ok(())
    } else {
        Err(EvalError::EvaluationPointNotInModel(format!("{x:?}")))
    }
}

pub(crate) fn check_facet(model: &SimplicialModel, x: Face) -> Result<(), EvalError> {
    check_face(model, x)?;
    if model.is_facet(x) {
        Ok(())
    } else {
        Err(EvalError::FacetRequired(model.face_label(x)))
    }
}
