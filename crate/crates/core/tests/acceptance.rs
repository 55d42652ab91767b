//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output; exits nonzero on any FAIL.

mod support;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use simplicheck::checker::{replay, run_all, sample_formulas, Budget, CheckReport};
use simplicheck::formula::{Formula, Group};
use simplicheck::modelgen::{enumerate_models, fixtures, isomorphic};
use simplicheck::semantics3::check_validity3;
use simplicheck::translate::{translate_def, translate_sharp, translation_top};
use simplicheck::{
    eval2_facet, eval3, parse, FamilySpec, ModelFamily, ModelSpec, SemanticsMode, Signature, SimplicialModel,
    TopPolicy, Truth3,
};
use support::{all_formulas, count_models, NaiveModel};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn at(model: &SimplicialModel, facet: &str, text: &str) -> Truth3 {
    let f = parse(text, &model.signature(), TopPolicy::Glocal).expect("criterion formulas parse");
    eval3(model, model.facet_by_name(facet).expect("named facet"), &f, SemanticsMode::Face).expect("resolves")
}

/// The worked verdicts on `C`, `C'` and `C''`, against frozen values and the oracle.
fn worked_example() -> Outcome {
    let start = Instant::now();
    let c = fixtures::model("C");
    let cases = [
        ("X", "p_c", Truth3::Undefined),
        ("X", "~p_c", Truth3::Undefined),
        ("X", "<K a> p_c", Truth3::True),
        ("X", "[K a] p_c", Truth3::True),
        ("X", "[K a] p_c -> p_c", Truth3::Undefined),
        ("X", "p_b & ~p_a", Truth3::True),
        ("Y", "<K a> p_b", Truth3::True),
        ("Y", "[D{a,b}] ~p_b", Truth3::True),
        ("X", "[K a] ~@c", Truth3::False),
        ("X", "[D{a,b}] ~@c", Truth3::True),
    ];
    let naive = NaiveModel::new(&c.to_raw());
    for (facet, text, expected) in cases {
        let got = at(&c, facet, text);
        ensure(got == expected, || format!("{text} at {facet}: {got}, expected {expected}"))?;
        let f = parse(text, &c.signature(), TopPolicy::Glocal).unwrap();
        let ids = c.vertex_ids(c.facet_by_name(facet).unwrap());
        let x = ids.into_iter().map(str::to_owned).collect();
        let oracle = Truth3::from_option(naive.truth3(&x, &f, false));
        ensure(oracle == expected, || format!("oracle disagrees on {text} at {facet}"))?;
    }
    let implication = parse("[K a] p_c -> p_c", &c.signature(), TopPolicy::Glocal).unwrap();
    let family = ModelFamily::build(&FamilySpec {
        parts: vec![
            simplicheck::modelgen::FamilyPart::Fixtures,
            simplicheck::modelgen::FamilyPart::Exhaustive {
                spec: ModelSpec::new(3, 1, 2),
            },
        ],
    })
    .map_err(|e| e.to_string())?;
    for mode in [SemanticsMode::Face, SemanticsMode::Facet] {
        let report = check_validity3(&implication, &family, mode);
        ensure(report.passed(), || format!("[K a] p_c -> p_c not {mode} valid: {}", report.to_json()))?;
    }
    let primed = at(&fixtures::model("Cprime"), "Y'", "<K a> ~@c");
    let double = at(&fixtures::model("Cdprime"), "Y''", "<K a> ~@c");
    ensure(primed == Truth3::True && double == Truth3::False, || {
        format!("<K a> ~@c: {primed} at Y', {double} at Y''")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} verdicts, validity over {} models, C'/C'' split ({} ms)",
        cases.len(),
        family.len(),
        elapsed.as_millis()
    ))
}

/// Translations of `K_a p_b`, `~p_a` and `~@a`, compared as trees.
fn translation_goldens() -> Outcome {
    let sig = Signature::standard(2, 1);
    let top = translation_top(&sig);
    let hat = |agent: &str, f: Formula| Formula::diamond(Group::singleton(agent.into()), f);
    let p = |agent: &str| Formula::local(format!("p_{agent}"), agent);
    let alive_b = hat("b", top.clone());
    let cases = [
        (
            Formula::knows("a", p("b")),
            hat("a", alive_b.clone()),
            Formula::and(
                hat("a", alive_b.clone()),
                Formula::not(hat("a", Formula::and(alive_b.clone(), Formula::not(p("b"))))),
            ),
        ),
        (
            Formula::not(p("a")),
            hat("a", top.clone()),
            Formula::and(hat("a", top.clone()), Formula::not(p("a"))),
        ),
        (
            Formula::not(Formula::global("a")),
            top.clone(),
            Formula::and(top.clone(), Formula::not(hat("a", top.clone()))),
        ),
    ];
    for (f, def, sharp) in &cases {
        ensure(&translate_def(f, &top) == def, || format!("def of {f}: {}", translate_def(f, &top)))?;
        ensure(&translate_sharp(f, &top) == sharp, || format!("sharp of {f}: {}", translate_sharp(f, &top)))?;
    }
    Ok(format!("{} formulas, def and sharp", cases.len()))
}

fn default_run() -> (Vec<CheckReport>, Duration) {
    let family = ModelFamily::default_family();
    let start = Instant::now();
    let reports = run_all(&family, &Budget::default());
    (reports, start.elapsed())
}

/// Every registered theorem on the default family and budget.
fn theorem_harness() -> Outcome {
    let (reports, elapsed) = default_run();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.theorem_id.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed: {}", failed.join(", ")))?;
    let gap = reports.iter().find(|r| r.theorem_id == "P3.6-gap").expect("registered");
    let cx = gap.counterexample.as_ref().ok_or("P3.6-gap has no counterexample")?;
    let model = simplicheck::validate_model(&cx.model).map_err(|e| e.to_string())?;
    ensure(isomorphic(&model, &fixtures::model("Cminus")), || "gap counterexample is not Cminus".into())?;
    replay(gap).map_err(|e| e.to_string())?;
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} theorems over {} models, gap on Cminus replays ({:.1} s)",
        reports.len(),
        reports[0].stats.models,
        elapsed.as_secs_f64()
    ))
}

/// The library evaluator against the naive oracle on every formula of depth
/// at most 2 over the exhaustive two-agent family.
fn oracle_equivalence() -> Outcome {
    let models = enumerate_models(&ModelSpec::new(2, 1, 2)).map_err(|e| e.to_string())?;
    let expected = count_models(2, 1, 2, 2);
    ensure(models.len() == expected, || format!("{} models, oracle counts {expected}", models.len()))?;
    let mut checked = 0u64;
    let mut formulas = 0;
    for model in &models {
        let raw = model.to_raw();
        let naive = NaiveModel::new(&raw);
        let all = all_formulas(&raw, 2);
        formulas = all.len();
        for (facet_mode, points) in [(true, &naive.facets), (false, &naive.faces)] {
            let mode = if facet_mode { SemanticsMode::Facet } else { SemanticsMode::Face };
            for x in points {
                let face = model.face_from_ids(&x.iter().collect::<Vec<_>>()).map_err(|e| e.to_string())?;
                for f in &all {
                    let got = eval3(model, face, f, mode).map_err(|e| e.to_string())?;
                    let want = Truth3::from_option(naive.truth3(x, f, facet_mode));
                    ensure(got == want, || format!("{f} at {x:?} ({mode}) in {}: {got} vs oracle {want}", model.to_json()))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{} models, {formulas} formulas, {checked} evaluations agree", models.len()))
}

/// Purity against the semantic test: every sampled formula and every
/// `~p_a` is defined at every facet and gets the same verdict from both.
fn purity_characterization() -> Outcome {
    let family = ModelFamily::default_family();
    let budget = Budget::default();
    let (mut pure, mut impure) = (0, 0);
    for model in family.models() {
        let sig = model.signature();
        let mut probes = sample_formulas(&sig, &budget);
        probes.extend(sig.atoms().iter().map(|p| Formula::not(Formula::Local(p.clone()))));
        let agree = model.facets().iter().all(|&x| {
            probes.iter().all(|f| {
                let three = eval3(model, x, f, SemanticsMode::Facet).expect("sampled over the signature");
                let two = eval2_facet(model, x, f).expect("sampled over the signature");
                three == Truth3::from(two)
            })
        });
        ensure(model.is_pure() == agree, || format!("is_pure {} vs semantic {agree}: {}", model.is_pure(), model.to_json()))?;
        if agree {
            pure += 1;
        } else {
            impure += 1;
        }
    }
    ensure(pure > 0 && impure > 0, || format!("{pure} pure, {impure} impure"))?;
    Ok(format!("{} models ({pure} pure, {impure} impure) agree", family.len()))
}

/// Two runs with identical inputs give identical reports up to timing.
fn determinism() -> Outcome {
    let (first, _) = default_run();
    let (second, _) = default_run();
    ensure(first.len() == second.len(), || "report counts differ".into())?;
    for (a, b) in first.iter().zip(&second) {
        ensure(a.to_json_without_timing() == b.to_json_without_timing(), || {
            format!("{} differs between runs", a.theorem_id)
        })?;
    }
    Ok(format!("{} reports byte-identical", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("worked-example verdicts", worked_example),
        ("translation goldens", translation_goldens),
        ("theorem harness on the default family", theorem_harness),
        ("oracle equivalence", oracle_equivalence),
        ("purity characterization", purity_characterization),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
