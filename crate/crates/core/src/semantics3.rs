//! Three-valued definability and satisfaction, at faces or at facets.
//!
//! Definability and satisfaction are computed together as a [`Judgement`],
//! but each follows its own clause; in particular the satisfaction clauses
//! for atoms and `D̂_B` do not consult definability.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::checker::{CheckReport, Counterexample, Observation, Probe};
use crate::complex::{Face, SimplicialModel};
use crate::formula::{Formula, Group};
use crate::labeling::Labeler;
use crate::modelgen::ModelFamily;
use crate::resolve::{check_face, check_facet, resolve, EvalError, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth3 {
    True,
    False,
    Undefined,
}

impl Truth3 {
    /// `None` is undefined.
    pub fn from_option(value: Option<bool>) -> Self {
        value.map_or(Truth3::Undefined, Truth3::from)
    }

    pub fn is_defined(self) -> bool {
        self != Truth3::Undefined
    }

    pub fn negate(self) -> Truth3 {
        match self {
            Truth3::True => Truth3::False,
            Truth3::False => Truth3::True,
            Truth3::Undefined => Truth3::Undefined,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth3::True => "true",
            Truth3::False => "false",
            Truth3::Undefined => "undefined",
        }
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<bool> for Truth3 {
    fn from(b: bool) -> Self {
        if b {
            Truth3::True
        } else {
            Truth3::False
        }
    }
}

/// The pair (⋈, ⊨) at one evaluation point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Judgement {
    pub defined: bool,
    pub satisfied: bool,
}

impl Judgement {
    pub fn truth(self) -> Truth3 {
        match (self.defined, self.satisfied) {
            (false, _) => Truth3::Undefined,
            (true, true) => Truth3::True,
            (true, false) => Truth3::False,
        }
    }
}

/// Where formulas are evaluated and where `D̂_B` looks for witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsMode {
    Face,
    Facet,
}

impl SemanticsMode {
    pub fn points(self, model: &SimplicialModel) -> &[Face] {
        match self {
            SemanticsMode::Face => model.all_faces(),
            SemanticsMode::Facet => model.facets(),
        }
    }

    pub(crate) fn check_point(self, model: &SimplicialModel, x: Face) -> Result<(), EvalError> {
        match self {
            SemanticsMode::Face => check_face(model, x),
            SemanticsMode::Facet => check_facet(model, x),
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsMode::Face => "face",
            SemanticsMode::Facet => "facet",
        })
    }
}

/// The three-valued verdict of `f` at `x`.
pub fn eval3(
    model: &SimplicialModel,
    x: Face,
    f: &Formula,
    mode: SemanticsMode,
) -> Result<Truth3, EvalError> {
    judge3(model, x, f, mode).map(Judgement::truth)
}

/// Definability and satisfaction of `f` at `x`, before packaging into a verdict.
pub fn judge3(
    model: &SimplicialModel,
    x: Face,
    f: &Formula,
    mode: SemanticsMode,
) -> Result<Judgement, EvalError> {
    mode.check_point(model, x)?;
    let r = resolve(model, f)?;
    Ok(judge3_resolved(model, x, &r, mode))
}

pub fn judge3_resolved(
    model: &SimplicialModel,
    x: Face,
    f: &Resolved,
    mode: SemanticsMode,
) -> Judgement {
    match f {
        Resolved::Alive(a) => {
            let defined = model.is_facet(x);
            Judgement {
                defined,
                satisfied: defined && model.colors(x).contains(*a),
            }
        }
        Resolved::Atom { atom, owner } => Judgement {
            defined: model.colors(x).contains(*owner),
            satisfied: model.true_atoms(x).contains(*atom),
        },
        Resolved::Not(g) => {
            let inner = judge3_resolved(model, x, g, mode);
            Judgement {
                defined: inner.defined,
                satisfied: inner.defined && !inner.satisfied,
            }
        }
        Resolved::And(g, h) => {
            let l = judge3_resolved(model, x, g, mode);
            let r = judge3_resolved(model, x, h, mode);
            Judgement {
                defined: l.defined && r.defined,
                satisfied: l.satisfied && r.satisfied,
            }
        }
        Resolved::Diamond(group, g) => {
            let mut out = Judgement::default();
            if !group.is_subset(model.colors(x)) {
                return out;
            }
            // Definability and truth may have different witnesses.
            for &y in mode.points(model) {
                if !group.is_subset(model.colors_of_mask(x.intersection(y))) {
                    continue;
                }
                let j = judge3_resolved(model, y, g, mode);
                out.defined |= j.defined;
                out.satisfied |= j.satisfied;
                if out.defined && out.satisfied {
                    break;
                }
            }
            out
        }
    }
}

/// `D_B body` evaluated by its own clause: defined iff `D̂_B body` is, true iff
/// additionally `body` is true at every witness where it is defined.
pub fn eval3_derived_box(
    model: &SimplicialModel,
    x: Face,
    group: &Group,
    body: &Formula,
    mode: SemanticsMode,
) -> Result<Truth3, EvalError> {
    mode.check_point(model, x)?;
    let Resolved::Diamond(group, body) = resolve(model, &Formula::diamond(group.clone(), body.clone()))?
    else {
        unreachable!("resolving a diamond yields a diamond")
    };
    let mut defined = false;
    let mut all_true = true;
    if group.is_subset(model.colors(x)) {
        for &y in mode.points(model) {
            if !group.is_subset(model.colors_of_mask(x.intersection(y))) {
                continue;
            }
            let j = judge3_resolved(model, y, &body, mode);
            if j.defined {
                defined = true;
                all_true &= j.satisfied;
            }
        }
    }
    Ok(match (defined, all_true) {
        (false, _) => Truth3::Undefined,
        (true, true) => Truth3::True,
        (true, false) => Truth3::False,
    })
}

/// Bounded three-valued validity: `f` is true wherever it is defined, at every
/// evaluation point of every model in `family`. A pass means only that the
/// family holds no counterexample.
pub fn check_validity3(f: &Formula, family: &ModelFamily, mode: SemanticsMode) -> CheckReport {
    let mut report = CheckReport::start(format!("validity3-{mode}"), family);
    report.stats.formulas = 1;
    for model in family.models() {
        report.stats.models += 1;
        let Ok(r) = resolve(model, f) else {
            continue;
        };
        let labeler = Labeler::new(model, mode);
        let labels = labeler.label3(&r);
        report.stats.points += labels.len() as u64;
        if let Some(i) = labels.iter().position(|j| j.defined && !j.satisfied) {
            let x = labeler.points()[i];
            report.fail(Counterexample::new(
                model,
                x,
                f,
                "true wherever defined",
                "defined and false",
                vec![Observation::record(model, x, Probe::Eval3 { mode }, f)],
            ));
            break;
        }
    }
    report.finish()
}
