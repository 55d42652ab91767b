//! Two-valued satisfaction.
//!
//! Facet semantics is the two-valued semantics proper. The face variant is
//! kept only to exhibit its defects: it is not monotone, and its validities
//! differ from the facet ones.

use crate::checker::{CheckReport, Counterexample, Observation, Probe};
use crate::complex::{Face, SimplicialModel};
use crate::formula::Formula;
use crate::labeling::Labeler;
use crate::modelgen::ModelFamily;
use crate::resolve::{check_face, check_facet, resolve, EvalError, Resolved};
use crate::semantics3::SemanticsMode;

pub fn eval2_facet(model: &SimplicialModel, x: Face, f: &Formula) -> Result<bool, EvalError> {
    check_facet(model, x)?;
    let r = resolve(model, f)?;
    Ok(eval2_resolved(model, x, &r, SemanticsMode::Facet))
}

/// Two-valued satisfaction at an arbitrary face, witnesses ranging over all faces.
pub fn eval2_face(model: &SimplicialModel, x: Face, f: &Formula) -> Result<bool, EvalError> {
    check_face(model, x)?;
    let r = resolve(model, f)?;
    Ok(eval2_resolved(model, x, &r, SemanticsMode::Face))
}

pub fn eval2_resolved(model: &SimplicialModel, x: Face, f: &Resolved, mode: SemanticsMode) -> bool {
    match f {
        Resolved::Alive(a) => model.colors(x).contains(*a),
        // False, not undefined, when the owner is absent.
        Resolved::Atom { atom, .. } => model.true_atoms(x).contains(*atom),
        Resolved::Not(g) => !eval2_resolved(model, x, g, mode),
        Resolved::And(g, h) => eval2_resolved(model, x, g, mode) && eval2_resolved(model, x, h, mode),
        Resolved::Diamond(group, g) => mode.points(model).iter().any(|&y| {
            group.is_subset(model.colors_of_mask(x.intersection(y)))
                && eval2_resolved(model, y, g, mode)
        }),
    }
}

/// Bounded two-valued validity over `family`.
pub fn check_validity2(f: &Formula, family: &ModelFamily, mode: SemanticsMode) -> CheckReport {
    let mut report = CheckReport::start(format!("validity2-{mode}"), family);
    report.stats.formulas = 1;
    for model in family.models() {
        report.stats.models += 1;
        let Ok(r) = resolve(model, f) else {
            continue;
        };
        let labeler = Labeler::new(model, mode);
        let labels = labeler.label2(&r);
        report.stats.points += labels.len() as u64;
        if let Some(i) = labels.iter().position(|b| !b) {
            let x = labeler.points()[i];
            report.fail(Counterexample::new(
                model,
                x,
                f,
                "true",
                "false",
                vec![Observation::record(model, x, Probe::Eval2 { mode }, f)],
            ));
            break;
        }
    }
    report.finish()
}
