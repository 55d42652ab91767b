//! The `simplicheck` binary end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use simplicheck::checker::{replay, CheckReport};
use simplicheck::modelgen::fixtures;
use tempfile::TempDir;

fn simplicheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplicheck"))
        .args(args)
        .env_remove("SIMPLICHECK_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

/// The last stdout line is the JSON record.
fn record(out: &Output) -> Value {
    let text = stdout(out);
    serde_json::from_str(text.lines().last().expect("output has a JSON line")).expect("JSON record")
}

fn fixture_dir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = simplicheck(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    dir
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn fixtures_round_trip_through_files() {
    let dir = fixture_dir();
    for name in fixtures::NAMES {
        let text = fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap();
        let model = simplicheck::SimplicialModel::from_json(&text).unwrap();
        assert_eq!(model.to_raw(), fixtures::model(name).to_raw(), "{name}");
    }
}

#[test]
fn check_verdicts() {
    let dir = fixture_dir();
    let c = path(dir.path(), "C.json");
    let cminus = path(dir.path(), "Cminus.json");
    let cases: [(&[&str], &str); 4] = [
        (&["check", &c, "--face", "0_a,1_b", "p_c", "--sem", "3-face"], "undefined"),
        (&["check", &c, "--face", "0_a,1_b", "[K a] p_c", "--sem", "3-face"], "true"),
        (&["check", &cminus, "--facet", "X", "<K a> T -> <K a> ~p_b", "--sem", "2-facet"], "false"),
        (&["check", &c, "--facet", "Y", "[D{a,b}] ~p_b", "--sem", "3-facet"], "true"),
    ];
    for (args, verdict) in cases {
        let out = simplicheck(args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out).lines().next(), Some(verdict), "{args:?}");
        assert_eq!(record(&out)["verdict"], verdict);
    }
}

#[test]
fn check_records_replay_into_check() {
    let dir = fixture_dir();
    let c = path(dir.path(), "C.json");
    let first = record(&simplicheck(&["check", &c, "--face", "0_a", "[K a] ~@c", "--sem", "3-face"]));
    let point: Vec<&str> = first["point"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let again = simplicheck(&[
        "check",
        first["model"].as_str().unwrap(),
        "--face",
        &point.join(","),
        first["formula"].as_str().unwrap(),
        "--sem",
        first["semantics"].as_str().unwrap(),
    ]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(record(&again), first);
}

#[test]
fn face_demo_needs_confirmation() {
    let dir = fixture_dir();
    let cminus = path(dir.path(), "Cminus.json");
    let refused = simplicheck(&["check", &cminus, "--facet", "X", "p_a", "--sem", "2-face-demo"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("infelicitous"), "{}", stderr(&refused));

    let vertex = ["check", &cminus, "--face", "0_a", "<K a> T -> <K a> ~p_b", "--sem", "2-face-demo"];
    let confirmed = simplicheck(&[&vertex[..], &["--i-know-this-is-infelicitous"]].concat());
    assert!(confirmed.status.success(), "{}", stderr(&confirmed));
    assert_eq!(record(&confirmed)["verdict"], "true");
}

#[test]
fn input_errors_exit_2() {
    let dir = fixture_dir();
    let c = path(dir.path(), "C.json");
    let missing = path(dir.path(), "missing.json");
    for args in [
        vec!["check", &c, "--facet", "X", "p_a &", "--sem", "3-facet"],
        vec!["check", &c, "--facet", "Z", "p_a", "--sem", "3-facet"],
        vec!["check", &c, "--facet", "X", "T", "--sem", "3-face"],
        vec!["check", &missing, "--facet", "X", "p_a", "--sem", "3-facet"],
        vec!["theorems", "--only", "L9.9"],
        vec!["frobnicate"],
    ] {
        let out = simplicheck(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
    let syntax = simplicheck(&["check", &c, "--facet", "X", "p_a &", "--sem", "3-facet"]);
    assert!(stderr(&syntax).contains("byte 5"), "{}", stderr(&syntax));
}

#[test]
fn translate_outputs() {
    for (formula, which, expected) in [
        ("[K a] p_b", "def", "<K a> <K b> T"),
        ("@a", "sharp", "<K a> T"),
        ("p_a", "validity", "(<K a> T) -> p_a"),
        ("~@a", "sharp", "T & (~<K a> T)"),
    ] {
        let out = simplicheck(&["translate", formula, "--which", which]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert_eq!(stdout(&out).lines().next(), Some(expected), "{formula} {which}");
        let json = record(&out);
        assert_eq!(json["output"], expected);
        assert_eq!(json["class"]["atoms"], "local");
    }
}

#[test]
fn pure_verdicts() {
    let out = simplicheck(&["pure", "--fixture", "Cdprime"]);
    assert_eq!(stdout(&out).lines().next(), Some("pure"));

    let out = simplicheck(&["pure", "--fixture", "C"]);
    let json = record(&out);
    assert_eq!(json["verdict"], "impure");
    let w = &json["witnesses"][0];
    assert_eq!((&w["facet_name"], &w["agent"], &w["formula"]), (&"X".into(), &"c".into(), &"~p_c".into()));
    assert_eq!((&w["three_valued"], &w["two_valued"]), (&"undefined".into(), &true.into()));

    let dir = fixture_dir();
    let json = record(&simplicheck(&["pure", &path(dir.path(), "Fig1ix.json")]));
    let agents: Vec<&str> = json["witnesses"].as_array().unwrap().iter().map(|w| w["agent"].as_str().unwrap()).collect();
    assert_eq!(agents, ["b", "c"]);
}

fn read_reports(dir: &Path) -> Vec<(PathBuf, Value)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let v = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
            (p, v)
        })
        .collect()
}

#[test]
fn gap_report_is_written_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = simplicheck(&["theorems", "--only", "P3.6-gap", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS P3.6-gap"));
    let text = fs::read_to_string(dir.path().join("P3.6-gap.json")).unwrap();
    let report: CheckReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed());
    let cx = report.counterexample.as_ref().expect("gap carries its counterexample");
    let model = simplicheck::validate_model(&cx.model).unwrap();
    assert!(simplicheck::modelgen::isomorphic(&model, &fixtures::model("Cminus")));
    assert_eq!(cx.point, ["0_a", "1_b"]);
    replay(&report).unwrap();
}

#[test]
fn exhaustive_two_agent_run_passes_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = simplicheck(&[
        "theorems",
        "--agents",
        "2",
        "--exhaustive",
        "--count",
        "60",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}{}", stdout(&out), stderr(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS ")).count(), 15);

    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let reports = read_reports(dir.path());
    assert_eq!(reports.len(), 15);
    for (file, report) in &reports {
        let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", file.display());
    }
}

#[test]
fn theorems_with_zero_random_formulas_pass() {
    let out = simplicheck(&["theorems", "--agents", "2", "--exhaustive", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn random_models_require_a_seed() {
    let out = simplicheck(&["theorems", "--agents", "3", "--random", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = simplicheck(&["enumerate", "--random", "5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_writes_the_family() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("family");
    let out = simplicheck(&["enumerate", "--agents", "2", "--atoms", "1", "--max-facets", "2", "--out", target.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let files = fs::read_dir(&target).unwrap().count();
    assert_eq!(files, 28);
    let first = fs::read_to_string(target.join("model_00000.json")).unwrap();
    simplicheck::SimplicialModel::from_json(&first).unwrap();
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_simplicheck"))
        .args(["enumerate", "--agents", "2", "--max-facets", "2", "--out", dir.path().to_str().unwrap()])
        .env("SIMPLICHECK_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SIMPLICHECK_CAP"));
}

#[test]
fn help_and_version_succeed() {
    assert!(simplicheck(&["--help"]).status.success());
    assert!(simplicheck(&["--version"]).status.success());
}
