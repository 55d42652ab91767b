use rayon::prelude::*;

use crate::complex::{Face, SimplicialModel};
use crate::formula::{Formula, Group, Signature};
use crate::labeling::Labeler;
use crate::modelgen::{fixtures, isomorphic, ModelFamily};
use crate::purity::impurity_witness;
use crate::resolve::{resolve, Resolved};
use crate::semantics3::{Judgement, SemanticsMode, Truth3};
use crate::translate::{translate_def, translate_sharp, translate_validity, translation_top};

use super::{sample_formulas, Budget, CheckReport, Counterexample, Observation, Probe};

const FACE: SemanticsMode = SemanticsMode::Face;
const FACET: SemanticsMode = SemanticsMode::Facet;

/// What one unit of work (a model, or a formula across models) contributed.
#[derive(Default)]
struct Run {
    points: u64,
    found: Option<Counterexample>,
}

impl Run {
    fn found(points: u64, cx: Counterexample) -> Self {
        Run {
            points,
            found: Some(cx),
        }
    }
}

struct Suite<'a> {
    family: &'a ModelFamily,
    groups: Vec<(Signature, Vec<Formula>)>,
}

impl<'a> Suite<'a> {
    fn new(family: &'a ModelFamily, budget: &Budget) -> Self {
        let mut groups: Vec<(Signature, Vec<Formula>)> = Vec::new();
        for m in family.models() {
            let sig = m.signature();
            if !groups.iter().any(|(s, _)| *s == sig) {
                let formulas = sample_formulas(&sig, budget);
                groups.push((sig, formulas));
            }
        }
        Suite { family, groups }
    }

    fn formulas_for(&self, m: &SimplicialModel) -> &[Formula] {
        let sig = m.signature();
        &self
            .groups
            .iter()
            .find(|(s, _)| *s == sig)
            .expect("every family signature has a sample")
            .1
    }

    fn formula_count(&self) -> u64 {
        self.groups.iter().map(|(_, f)| f.len() as u64).sum()
    }

    /// Checks every model in parallel; the first counterexample in family order wins.
    fn per_model<F>(&self, report: &mut CheckReport, check: F)
    where
        F: Fn(&SimplicialModel, &[Formula]) -> Run + Sync,
    {
        report.stats.formulas = self.formula_count();
        let runs: Vec<Run> = self
            .family
            .models()
            .par_iter()
            .map(|m| check(m, self.formulas_for(m)))
            .collect();
        for run in runs {
            report.stats.models += 1;
            report.stats.points += run.points;
            if let Some(cx) = run.found {
                report.fail(cx);
                return;
            }
        }
    }

    /// Checks every formula across all models of its signature; the first
    /// counterexample in (signature, formula) order wins.
    fn per_formula<F>(&self, report: &mut CheckReport, check: F)
    where
        F: Fn(&[&SimplicialModel], &Formula) -> Run + Sync,
    {
        report.stats.models = self.family.len() as u64;
        for (sig, formulas) in &self.groups {
            let models: Vec<&SimplicialModel> =
                self.family.models().iter().filter(|m| m.signature() == *sig).collect();
            let runs: Vec<Run> = formulas.par_iter().map(|f| check(&models, f)).collect();
            for run in runs {
                report.stats.formulas += 1;
                report.stats.points += run.points;
                if let Some(cx) = run.found {
                    report.fail(cx);
                    return;
                }
            }
        }
    }
}

fn res(m: &SimplicialModel, f: &Formula) -> Resolved {
    resolve(m, f).expect("sampled formulas match the model signature")
}

fn group_of(m: &SimplicialModel, mask: u64) -> Group {
    Group::new(
        m.agents()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone()),
    )
    .expect("mask is nonzero")
}

fn obs(m: &SimplicialModel, x: Face, probe: Probe, f: &Formula) -> Observation {
    Observation::record(m, x, probe, f)
}

pub(super) fn run(id: &str, family: &ModelFamily, budget: &Budget) -> CheckReport {
    let mut report = CheckReport::start(id, family);
    report.budget = Some(*budget);
    let suite = Suite::new(family, budget);
    match id {
        "L2.4-connectives" => suite.per_model(&mut report, connectives),
        "L2.4-duality" => suite.per_model(&mut report, duality),
        "L2.6-monotonicity" => suite.per_model(&mut report, monotonicity),
        "L3.1-def-agree" => suite.per_model(&mut report, |m, fs| face_facet_agree(m, fs, true)),
        "L3.2-sat-agree" => suite.per_model(&mut report, |m, fs| face_facet_agree(m, fs, false)),
        "T3.4-validity-transfer" => suite.per_formula(&mut report, validity_transfer),
        "P3.6-gap" => gap(family, &mut report),
        "L3.7-alive" => suite.per_model(&mut report, |m, _| alive(m)),
        "T4.2-def" => suite.per_model(&mut report, |m, fs| translation_agrees(m, fs, true)),
        "T4.2-sat" => suite.per_model(&mut report, |m, fs| translation_agrees(m, fs, false)),
        "C4.3-validity-embed" => suite.per_formula(&mut report, validity_embed),
        "C4.4-pure-coincide" => suite.per_model(&mut report, pure_coincide),
        "T4.5-purity-iff" => suite.per_model(&mut report, purity_iff),
        "P4.7-sharp-implies-def" => suite.per_model(&mut report, |m, fs| {
            two_valued_facet_valid(m, fs, |f, top| {
                Formula::implies(translate_sharp(f, top), translate_def(f, top))
            })
        }),
        "P4.8-double-neg" => suite.per_model(&mut report, |m, fs| {
            two_valued_facet_valid(m, fs, |f, top| {
                Formula::iff(
                    translate_sharp(&Formula::not(Formula::not(f.clone())), top),
                    translate_sharp(f, top),
                )
            })
        }),
        _ => unreachable!("ids are checked against the registry"),
    }
    report.finish()
}

fn connectives(m: &SimplicialModel, formulas: &[Formula]) -> Run {
    let mut points = 0;
    for mode in [FACE, FACET] {
        let lab = Labeler::new(m, mode);
        let labels: Vec<Vec<Judgement>> = formulas.iter().map(|f| lab.label3(&res(m, f))).collect();
        for (f, ls) in formulas.iter().zip(&labels) {
            points += ls.len() as u64;
            if let Some(i) = ls.iter().position(|j| j.satisfied && !j.defined) {
                let x = lab.points()[i];
                return Run::found(
                    points,
                    Counterexample::new(
                        m,
                        x,
                        f,
                        "satisfied implies defined",
                        "satisfied but undefined",
                        vec![obs(m, x, Probe::Judge3 { mode }, f)],
                    ),
                );
            }
        }
        let n = formulas.len();
        for i in 0..n {
            let k = (i + 1) % n;
            let (phi, psi) = (&formulas[i], &formulas[k]);
            let (lp, lq) = (&labels[i], &labels[k]);
            type Clause = fn(bool, bool) -> bool;
            let cases: [(Formula, Clause); 3] = [
                (Formula::or(phi.clone(), psi.clone()), |p, q| p || q),
                (Formula::implies(phi.clone(), psi.clone()), |p, q| !p || q),
                (Formula::iff(phi.clone(), psi.clone()), |p, q| p == q),
            ];
            for (compound, clause) in cases {
                let lc = lab.label3(&res(m, &compound));
                for (p, &x) in lab.points().iter().enumerate() {
                    let expected = lp[p].defined && lq[p].defined && clause(lp[p].satisfied, lq[p].satisfied);
                    if lc[p].satisfied != expected {
                        let probe = Probe::Judge3 { mode };
                        return Run::found(
                            points,
                            Counterexample::new(
                                m,
                                x,
                                &compound,
                                format!("satisfied={expected}"),
                                format!("satisfied={}", lc[p].satisfied),
                                vec![obs(m, x, probe, phi), obs(m, x, probe, psi), obs(m, x, probe, &compound)],
                            ),
                        );
                    }
                }
            }
        }
    }
    Run { points, found: None }
}

fn duality(m: &SimplicialModel, formulas: &[Formula]) -> Run {
    let mut points = 0;
    let agents = m.agents().len();
    for mode in [FACE, FACET] {
        let lab = Labeler::new(m, mode);
        for f in formulas {
            let body = lab.label3(&res(m, f));
            for mask in 1..(1u64 << agents) {
                let group = group_of(m, mask);
                let derived = lab.derived_box3(crate::complex::AgentSet(mask), &body);
                let boxed = Formula::boxed(group, f.clone());
                let sugar = lab.label3(&res(m, &boxed));
                points += body.len() as u64;
                for (p, &x) in lab.points().iter().enumerate() {
                    if derived[p] != sugar[p].truth() {
                        return Run::found(
                            points,
                            Counterexample::new(
                                m,
                                x,
                                &boxed,
                                derived[p].to_string(),
                                sugar[p].truth().to_string(),
                                vec![
                                    obs(m, x, Probe::DerivedBox3 { mode }, &boxed),
                                    obs(m, x, Probe::Eval3 { mode }, &boxed),
                                ],
                            ),
                        );
                    }
                }
            }
        }
    }
    Run { points, found: None }
}

fn monotonicity(m: &SimplicialModel, formulas: &[Formula]) -> Run {
    let lab = Labeler::new(m, FACE);
    let faces = lab.points();
    let mut points = 0;
    for f in formulas {
        let ls = lab.label3(&res(m, f));
        points += ls.len() as u64;
        for (i, &x) in faces.iter().enumerate() {
            for (k, &y) in faces.iter().enumerate() {
                if i == k || !x.is_subset(y) {
                    continue;
                }
                let (lx, ly) = (ls[i], ls[k]);
                let broken = if lx.defined && !ly.defined {
                    Some("definability is upward monotone")
                } else if lx.satisfied && !ly.satisfied {
                    Some("truth is upward monotone")
                } else if ly.satisfied && lx.defined && !lx.satisfied {
                    Some("truth is downward monotone where defined")
                } else {
                    None
                };
                if let Some(rule) = broken {
                    let probe = Probe::Judge3 { mode: FACE };
                    return Run::found(
                        points,
                        Counterexample::new(
                            m,
                            x,
                            f,
                            rule,
                            format!("violated between {} and {}", m.face_label(x), m.face_label(y)),
                            vec![obs(m, x, probe, f), obs(m, y, probe, f)],
                        ),
                    );
                }
            }
        }
    }
    Run { points, found: None }
}

fn face_facet_agree(m: &SimplicialModel, formulas: &[Formula], definability: bool) -> Run {
    let face = Labeler::new(m, FACE);
    let facet = Labeler::new(m, FACET);
    let at: Vec<usize> = facet
        .points()
        .iter()
        .map(|&x| face.position(x).expect("facets are faces"))
        .collect();
    let mut points = 0;
    for f in formulas {
        let r = res(m, f);
        let (lf, lt) = (face.label3(&r), facet.label3(&r));
        points += lt.len() as u64;
        for (p, &x) in facet.points().iter().enumerate() {
            let (a, b) = if definability {
                (lf[at[p]].defined, lt[p].defined)
            } else {
                (lf[at[p]].satisfied, lt[p].satisfied)
            };
            if a != b {
                let what = if definability { "defined" } else { "satisfied" };
                return Run::found(
                    points,
                    Counterexample::new(
                        m,
                        x,
                        f,
                        format!("face {what}={a}"),
                        format!("facet {what}={b}"),
                        vec![
                            obs(m, x, Probe::Judge3 { mode: FACE }, f),
                            obs(m, x, Probe::Judge3 { mode: FACET }, f),
                        ],
                    ),
                );
            }
        }
    }
    Run { points, found: None }
}

/// First point of `models` where `f` is defined and false, in `mode`.
fn first_invalid3<'m>(
    models: &[&'m SimplicialModel],
    f: &Formula,
    mode: SemanticsMode,
    points: &mut u64,
) -> Option<(&'m SimplicialModel, Face)> {
    for &m in models {
        let lab = Labeler::new(m, mode);
        let ls = lab.label3(&res(m, f));
        *points += ls.len() as u64;
        if let Some(i) = ls.iter().position(|j| j.defined && !j.satisfied) {
            return Some((m, lab.points()[i]));
        }
    }
    None
}

fn validity_transfer(models: &[&SimplicialModel], f: &Formula) -> Run {
    let mut points = 0;
    let face = first_invalid3(models, f, FACE, &mut points);
    let facet = first_invalid3(models, f, FACET, &mut points);
    match (face, facet) {
        (Some(_), Some(_)) | (None, None) => Run { points, found: None },
        (Some((m, x)), None) | (None, Some((m, x))) => {
            let face_valid = face.is_none();
            let mode = if face_valid { FACET } else { FACE };
            Run::found(
                points,
                Counterexample::new(
                    m,
                    x,
                    f,
                    "equal bounded validity verdicts",
                    format!("face valid={face_valid}, facet valid={}", !face_valid),
                    vec![obs(m, x, Probe::Eval3 { mode }, f)],
                ),
            )
        }
    }
}

fn validity_embed(models: &[&SimplicialModel], f: &Formula) -> Run {
    let mut points = 0;
    let three = first_invalid3(models, f, FACE, &mut points);
    let mut two = None;
    for &m in models {
        let v = translate_validity(f, &translation_top(&m.signature()));
        let lab = Labeler::new(m, FACET);
        let ls = lab.label2(&res(m, &v));
        points += ls.len() as u64;
        if let Some(i) = ls.iter().position(|b| !b) {
            two = Some((m, lab.points()[i], v));
            break;
        }
    }
    match (three, two) {
        (Some(_), Some(_)) | (None, None) => Run { points, found: None },
        (Some((m, x)), None) => Run::found(
            points,
            Counterexample::new(
                m,
                x,
                f,
                "three-valued validity matches validity of the translation",
                "three-valued counterexample, translation valid",
                vec![obs(m, x, Probe::Eval3 { mode: FACE }, f)],
            ),
        ),
        (None, Some((m, x, v))) => Run::found(
            points,
            Counterexample::new(
                m,
                x,
                &v,
                "three-valued validity matches validity of the translation",
                "three-valued valid, translation fails",
                vec![obs(m, x, Probe::Eval2 { mode: FACET }, &v)],
            ),
        ),
    }
}

fn gap(family: &ModelFamily, report: &mut CheckReport) {
    let mut first_facet_failure: Option<(&SimplicialModel, Face, Formula)> = None;
    for m in family.models() {
        report.stats.models += 1;
        let top = m.signature().two_valued_top();
        let f = Formula::implies(
            Formula::possible("a", top),
            Formula::possible("a", Formula::not(Formula::local("p_b", "b"))),
        );
        let Ok(r) = resolve(m, &f) else {
            continue;
        };
        report.stats.formulas = 1;
        let face = Labeler::new(m, FACE);
        let lf = face.label2(&r);
        report.stats.points += lf.len() as u64;
        if let Some(i) = lf.iter().position(|b| !b) {
            let x = face.points()[i];
            report.fail(Counterexample::new(
                m,
                x,
                &f,
                "two-valued face validity",
                "false at a face",
                vec![obs(m, x, Probe::Eval2 { mode: FACE }, &f)],
            ));
            return;
        }
        if first_facet_failure.is_none() {
            let facet = Labeler::new(m, FACET);
            if let Some(i) = facet.label2(&r).iter().position(|b| !b) {
                first_facet_failure = Some((m, facet.points()[i], f));
            }
        }
    }
    let Some((m, x, f)) = first_facet_failure else {
        report.outcome = super::Outcome::Counterexample;
        report.summary = "no facet counterexample in family; the gap is not exhibited".into();
        return;
    };
    let cx = Counterexample::new(
        m,
        x,
        &f,
        "facet counterexample isomorphic to Cminus",
        "false at a facet",
        vec![
            obs(m, x, Probe::Eval2 { mode: FACET }, &f),
            obs(m, x, Probe::Eval2 { mode: FACE }, &f),
        ],
    );
    if isomorphic(m, &fixtures::model("Cminus")) {
        report.counterexample = Some(cx);
        report.summary = "face valid in family; first facet counterexample is isomorphic to Cminus".into();
    } else {
        report.fail(Counterexample {
            actual: "first facet counterexample is not isomorphic to Cminus".into(),
            ..cx
        });
    }
}

fn alive(m: &SimplicialModel) -> Run {
    let top = m.signature().two_valued_top();
    let lab = Labeler::new(m, FACET);
    let mut points = 0;
    for a in m.agents() {
        let f = Formula::iff(Formula::Global(a.clone()), Formula::possible(a.clone(), top.clone()));
        let ls = lab.label2(&res(m, &f));
        points += ls.len() as u64;
        if let Some(i) = ls.iter().position(|b| !b) {
            let x = lab.points()[i];
            return Run::found(
                points,
                Counterexample::new(m, x, &f, "true", "false", vec![obs(m, x, Probe::Eval2 { mode: FACET }, &f)]),
            );
        }
    }
    Run { points, found: None }
}

fn translation_agrees(m: &SimplicialModel, formulas: &[Formula], definability: bool) -> Run {
    let top = translation_top(&m.signature());
    let lab = Labeler::new(m, FACET);
    let mut points = 0;
    for f in formulas {
        let t = if definability {
            translate_def(f, &top)
        } else {
            translate_sharp(f, &top)
        };
        let three = lab.label3(&res(m, f));
        let two = lab.label2(&res(m, &t));
        points += two.len() as u64;
        for (p, &x) in lab.points().iter().enumerate() {
            let lhs = if definability {
                three[p].defined
            } else {
                three[p].truth() == Truth3::True
            };
            if lhs != two[p] {
                return Run::found(
                    points,
                    Counterexample::new(
                        m,
                        x,
                        f,
                        format!("translation true iff {}", if definability { "defined" } else { "true" }),
                        format!("three-valued {}, translation {}", three[p].truth(), two[p]),
                        vec![
                            obs(m, x, Probe::Eval3 { mode: FACET }, f),
                            obs(m, x, Probe::Eval2 { mode: FACET }, &t),
                        ],
                    ),
                );
            }
        }
    }
    Run { points, found: None }
}

/// First facet and formula where the semantics disagree or `f` is undefined.
fn first_disagreement<'f>(lab: &Labeler<'_>, m: &SimplicialModel, formulas: impl IntoIterator<Item = &'f Formula>, points: &mut u64) -> Option<(Face, Formula)> {
    for f in formulas {
        let r = res(m, f);
        let three = lab.label3(&r);
        let two = lab.label2(&r);
        *points += two.len() as u64;
        if let Some(p) = (0..two.len()).find(|&p| !three[p].defined || three[p].satisfied != two[p]) {
            return Some((lab.points()[p], f.clone()));
        }
    }
    None
}

fn disagreement_observations(m: &SimplicialModel, x: Face, f: &Formula) -> Vec<Observation> {
    vec![
        obs(m, x, Probe::Eval3 { mode: FACET }, f),
        obs(m, x, Probe::Eval2 { mode: FACET }, f),
    ]
}

fn pure_coincide(m: &SimplicialModel, formulas: &[Formula]) -> Run {
    if !m.is_pure() {
        return Run::default();
    }
    let lab = Labeler::new(m, FACET);
    let mut points = 0;
    match first_disagreement(&lab, m, formulas, &mut points) {
        None => Run { points, found: None },
        Some((x, f)) => Run::found(
            points,
            Counterexample::new(
                m,
                x,
                &f,
                "defined, with equal verdicts",
                "disagreement on a pure model",
                disagreement_observations(m, x, &f),
            ),
        ),
    }
}

fn purity_iff(m: &SimplicialModel, formulas: &[Formula]) -> Run {
    let lab = Labeler::new(m, FACET);
    let witnesses: Vec<Formula> = (0..m.agents().len()).map(|a| impurity_witness(m, a)).collect();
    let mut points = 0;
    let found = first_disagreement(&lab, m, witnesses.iter().chain(formulas), &mut points);
    match (m.is_pure(), found) {
        (true, None) | (false, Some(_)) => Run { points, found: None },
        (true, Some((x, f))) => Run::found(
            points,
            Counterexample::new(
                m,
                x,
                &f,
                "agreement on a pure model",
                "disagreement",
                disagreement_observations(m, x, &f),
            ),
        ),
        (false, None) => {
            let (pos, agent) = m
                .facets()
                .iter()
                .enumerate()
                .find_map(|(i, &x)| (0..m.agents().len()).find(|&a| !m.colors(x).contains(a)).map(|a| (i, a)))
                .expect("an impure model has a facet missing an agent");
            let x = m.facets()[pos];
            let f = impurity_witness(m, agent);
            Run::found(
                points,
                Counterexample::new(
                    m,
                    x,
                    &f,
                    "disagreement on an impure model",
                    "agreement everywhere",
                    disagreement_observations(m, x, &f),
                ),
            )
        }
    }
}

fn two_valued_facet_valid(m: &SimplicialModel, formulas: &[Formula], build: impl Fn(&Formula, &Formula) -> Formula) -> Run {
    let top = translation_top(&m.signature());
    let lab = Labeler::new(m, FACET);
    let mut points = 0;
    for f in formulas {
        let g = build(f, &top);
        let ls = lab.label2(&res(m, &g));
        points += ls.len() as u64;
        if let Some(i) = ls.iter().position(|b| !b) {
            let x = lab.points()[i];
            return Run::found(
                points,
                Counterexample::new(m, x, &g, "true", "false", vec![obs(m, x, Probe::Eval2 { mode: FACET }, &g)]),
            );
        }
    }
    Run { points, found: None }
}
