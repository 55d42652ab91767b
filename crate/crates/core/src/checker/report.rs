use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{validate_model, Face, ModelError, RawModel, SimplicialModel};
use crate::formula::{parse, print, Formula, Group, ParseError, TopPolicy};
use crate::modelgen::{FamilySpec, ModelFamily};
use crate::resolve::EvalError;
use crate::semantics2::{eval2_face, eval2_facet};
use crate::semantics3::{eval3_derived_box, judge3, SemanticsMode};

use super::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Counterexample,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub models: u64,
    pub points: u64,
    pub formulas: u64,
    pub elapsed_ms: u64,
}

/// Outcome of one bounded check. A pass means the family holds no
/// counterexample, nothing more.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub theorem_id: String,
    pub family: FamilySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
    pub outcome: Outcome,
    pub summary: String,
    pub counterexample: Option<Counterexample>,
    pub stats: Stats,
    #[serde(skip)]
    started: Option<Instant>,
}

pub const NO_COUNTEREXAMPLE: &str = "no counterexample in family";

impl CheckReport {
    pub fn start(theorem_id: impl Into<String>, family: &ModelFamily) -> Self {
        CheckReport {
            theorem_id: theorem_id.into(),
            family: family.spec().clone(),
            budget: None,
            outcome: Outcome::Pass,
            summary: NO_COUNTEREXAMPLE.into(),
            counterexample: None,
            stats: Stats::default(),
            started: Some(Instant::now()),
        }
    }

    pub fn fail(&mut self, cx: Counterexample) {
        self.outcome = Outcome::Counterexample;
        self.summary = format!("counterexample: expected {}, found {}", cx.expected, cx.actual);
        self.counterexample = Some(cx);
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.stats.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// The JSON form with `elapsed_ms` zeroed, for comparing runs.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.stats.elapsed_ms = 0;
        copy.to_json()
    }
}

/// A discrepancy together with the evaluations that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub model: RawModel,
    pub point: Vec<String>,
    pub formula: String,
    pub expected: String,
    pub actual: String,
    pub observations: Vec<Observation>,
}

impl Counterexample {
    pub fn new(
        model: &SimplicialModel,
        point: Face,
        formula: &Formula,
        expected: impl Into<String>,
        actual: impl Into<String>,
        observations: Vec<Observation>,
    ) -> Self {
        Counterexample {
            model: model.to_raw(),
            point: ids(model, point),
            formula: print(formula),
            expected: expected.into(),
            actual: actual.into(),
            observations,
        }
    }
}

/// The evaluation an observation records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Probe {
    /// Three-valued verdict: `true`, `false` or `undefined`.
    Eval3 { mode: SemanticsMode },
    /// The raw definability and satisfaction bits, as `defined=…,satisfied=…`.
    Judge3 { mode: SemanticsMode },
    /// `D_B φ` by its own clause; the formula must have the shape `~<D{B}> ~φ`.
    DerivedBox3 { mode: SemanticsMode },
    /// Two-valued verdict: `true` or `false`.
    Eval2 { mode: SemanticsMode },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("formula is not a box: {0}")]
    NotABox(String),
}

impl Probe {
    /// Evaluates with the pointwise evaluators.
    pub fn evaluate(self, model: &SimplicialModel, x: Face, f: &Formula) -> Result<String, ProbeError> {
        Ok(match self {
            Probe::Eval3 { mode } => judge3(model, x, f, mode)?.truth().to_string(),
            Probe::Judge3 { mode } => {
                let j = judge3(model, x, f, mode)?;
                format!("defined={},satisfied={}", j.defined, j.satisfied)
            }
            Probe::DerivedBox3 { mode } => {
                let (group, body): (&Group, &Formula) =
                    f.as_box().ok_or_else(|| ProbeError::NotABox(print(f)))?;
                eval3_derived_box(model, x, group, body, mode)?.to_string()
            }
            Probe::Eval2 { mode: SemanticsMode::Facet } => eval2_facet(model, x, f)?.to_string(),
            Probe::Eval2 { mode: SemanticsMode::Face } => eval2_face(model, x, f)?.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    pub point: Vec<String>,
    pub probe: Probe,
    pub formula: String,
    pub verdict: String,
}

impl Observation {
    /// Evaluates `probe` at `x` and records the verdict.
    ///
    /// # Panics
    /// If `x` or `f` does not belong to `model`; observations are only taken
    /// at points the checker already evaluated.
    pub fn record(model: &SimplicialModel, x: Face, probe: Probe, f: &Formula) -> Self {
        let verdict = probe
            .evaluate(model, x, f)
            .unwrap_or_else(|e| panic!("observation at an evaluated point failed: {e}"));
        Observation {
            point: ids(model, x),
            probe,
            formula: print(f),
            verdict,
        }
    }
}

fn ids(model: &SimplicialModel, x: Face) -> Vec<String> {
    model.vertex_ids(x).into_iter().map(str::to_owned).collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplayError {
    #[error("report has no counterexample to replay")]
    NothingToReplay,
    #[error("recorded model is invalid: {0}")]
    Model(#[from] ModelError),
    #[error("recorded point {0:?} is not a face of the model")]
    Point(Vec<String>),
    #[error("recorded formula `{formula}` does not parse: {source}")]
    Formula { formula: String, source: ParseError },
    #[error("probe failed: {0}")]
    Probe(#[from] ProbeError),
    #[error("observation {index} changed: recorded `{recorded}`, replayed `{replayed}`")]
    Mismatch {
        index: usize,
        recorded: String,
        replayed: String,
    },
}

/// Re-evaluates every observation of the report's counterexample and checks
/// that each verdict is reproduced exactly.
pub fn replay(report: &CheckReport) -> Result<(), ReplayError> {
    let cx = report.counterexample.as_ref().ok_or(ReplayError::NothingToReplay)?;
    replay_counterexample(cx)
}

pub fn replay_counterexample(cx: &Counterexample) -> Result<(), ReplayError> {
    let model = validate_model(&cx.model)?;
    let sig = model.signature();
    for (index, obs) in cx.observations.iter().enumerate() {
        let x = model
            .face_from_ids(&obs.point)
            .map_err(|_| ReplayError::Point(obs.point.clone()))?;
        let f = parse(&obs.formula, &sig, TopPolicy::Forbidden).map_err(|source| ReplayError::Formula {
            formula: obs.formula.clone(),
            source,
        })?;
        let replayed = obs.probe.evaluate(&model, x, &f)?;
        if replayed != obs.verdict {
            return Err(ReplayError::Mismatch {
                index,
                recorded: obs.verdict.clone(),
                replayed,
            });
        }
    }
    Ok(())
}
