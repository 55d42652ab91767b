//! The `simplicheck` command line.
//!
//! Exit codes: 0 success or all theorems pass, 1 a counterexample, 2 a usage
//! or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checker::{run_all, run_theorem, Budget, CheckReport};
use crate::complex::{AgentId, SimplicialModel};
use crate::formula::{classify, parse, print, print_sugared, LocalAtom, Signature, TopPolicy};
use crate::modelgen::{fixtures, FamilyPart, FamilySpec, ModelFamily, ModelSpec};
use crate::purity::purity_witnesses;
use crate::semantics2::{eval2_face, eval2_facet};
use crate::semantics3::{eval3, SemanticsMode};
use crate::translate::{translate_def, translate_sharp, translate_validity, translation_top};

pub const INFELICITY_FLAG: &str = "--i-know-this-is-infelicitous";

#[derive(Parser, Debug)]
#[command(name = "simplicheck", version, about = "Epistemic logic on impure simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a formula at a face or facet of a model file.
    Check(CheckArgs),
    /// Print the definability or truth translation of a formula.
    Translate(TranslateArgs),
    /// Run the bounded theorem harness.
    Theorems(TheoremArgs),
    /// Decide purity and print separating witnesses.
    Pure(PureArgs),
    /// Write a model family as JSON files.
    Enumerate(EnumerateArgs),
    /// Write the named fixture models as JSON files.
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    #[value(name = "3-face")]
    ThreeFace,
    #[value(name = "3-facet")]
    ThreeFacet,
    #[value(name = "2-facet")]
    TwoFacet,
    #[value(name = "2-face-demo")]
    TwoFaceDemo,
}

impl Semantics {
    fn name(self) -> &'static str {
        match self {
            Semantics::ThreeFace => "3-face",
            Semantics::ThreeFacet => "3-facet",
            Semantics::TwoFacet => "2-facet",
            Semantics::TwoFaceDemo => "2-face-demo",
        }
    }

    /// `T` has no sound encoding in three-valued face semantics.
    fn top_policy(self, sig: &Signature) -> TopPolicy {
        match self {
            Semantics::ThreeFace => TopPolicy::Forbidden,
            Semantics::ThreeFacet => TopPolicy::Glocal,
            _ if sig.atoms().is_empty() => TopPolicy::Glocal,
            _ => TopPolicy::TwoValuedLocal,
        }
    }
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("point").required(true).args(["face", "facet"]))]
pub struct CheckArgs {
    /// Model JSON file.
    pub model: PathBuf,
    /// Formula text.
    pub formula: String,
    /// Comma-separated vertex ids of the evaluation face.
    #[arg(long, value_delimiter = ',')]
    pub face: Option<Vec<String>>,
    /// Name of the evaluation facet.
    #[arg(long)]
    pub facet: Option<String>,
    #[arg(long, value_enum)]
    pub sem: Semantics,
    /// Required with `--sem 2-face-demo`.
    #[arg(long = "i-know-this-is-infelicitous")]
    pub infelicitous: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Def,
    Sharp,
    Validity,
}

#[derive(Args, Debug)]
pub struct TranslateArgs {
    pub formula: String,
    #[arg(long, value_enum)]
    pub which: Which,
    /// Agents, comma-separated; defaults to a,b,c.
    #[arg(long, value_delimiter = ',', conflicts_with = "model")]
    pub agents: Option<Vec<String>>,
    /// Atoms named `name_owner`, comma-separated; defaults to p_<agent> for every agent.
    #[arg(long, value_delimiter = ',', conflicts_with = "model")]
    pub atoms: Option<Vec<String>>,
    /// Take agents and atoms from a model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TheoremArgs {
    /// The default family and budget (also used when no family flag is given).
    #[arg(long = "default")]
    pub use_default: bool,
    /// Run only these theorems.
    #[arg(long)]
    pub only: Vec<String>,
    #[arg(long)]
    pub agents: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub atoms: usize,
    #[arg(long)]
    pub max_facets: Option<usize>,
    /// Include every model of the spec, up to isomorphism.
    #[arg(long)]
    pub exhaustive: bool,
    /// Include this many random models; needs `--model-seed`.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long)]
    pub model_seed: Option<u64>,
    /// Seed of the formula sample.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random formulas per signature.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Directory for one JSON report per theorem.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["model", "fixture"]))]
pub struct PureArgs {
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 2)]
    pub agents: usize,
    #[arg(long, default_value_t = 1)]
    pub atoms: usize,
    #[arg(long, default_value_t = 2)]
    pub max_facets: usize,
    #[arg(long, default_value_t = 2)]
    pub variants: usize,
    /// Sample this many random models instead; needs `--seed`.
    #[arg(long, requires = "seed")]
    pub random: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    #[arg(long)]
    pub out: PathBuf,
}

/// A failed command: its message and exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Check(a) => check(a, out),
        Command::Translate(a) => translate(a, out),
        Command::Theorems(a) => theorems(a, out),
        Command::Pure(a) => pure(a, out),
        Command::Enumerate(a) => enumerate(a, out),
        Command::Fixtures(a) => write_fixtures(a, out),
    }
}

fn io(e: std::io::Error) -> Failure {
    usage(format!("i/o: {e}"))
}

fn load_model(path: &Path) -> Result<SimplicialModel, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    SimplicialModel::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn check(a: CheckArgs, out: &mut dyn Write) -> CmdResult {
    if a.sem == Semantics::TwoFaceDemo && !a.infelicitous {
        return Err(usage(format!(
            "2-face-demo is the two-valued face semantics, which is infelicitous on impure complexes: \
             truth is not monotone and <K a> T -> <K a> ~p_b comes out valid. Pass {INFELICITY_FLAG} to use it anyway."
        )));
    }
    let model = load_model(&a.model)?;
    let x = match (&a.face, &a.facet) {
        (Some(ids), _) => model.face_from_ids(ids),
        (None, Some(name)) => model.facet_by_name(name),
        (None, None) => unreachable!("clap requires a point"),
    }
    .map_err(|e| usage(format!("{}: {e}", a.model.display())))?;
    let sig = model.signature();
    let f = parse(&a.formula, &sig, a.sem.top_policy(&sig)).map_err(|e| usage(format!("formula: {e}")))?;
    let verdict = match a.sem {
        Semantics::ThreeFace => eval3(&model, x, &f, SemanticsMode::Face).map(|t| t.to_string()),
        Semantics::ThreeFacet => eval3(&model, x, &f, SemanticsMode::Facet).map(|t| t.to_string()),
        Semantics::TwoFacet => eval2_facet(&model, x, &f).map(|b| b.to_string()),
        Semantics::TwoFaceDemo => eval2_face(&model, x, &f).map(|b| b.to_string()),
    }
    .map_err(|e| usage(e.to_string()))?;
    let record = json!({
        "model": a.model.display().to_string(),
        "point": model.vertex_ids(x),
        "formula": print(&f),
        "semantics": a.sem.name(),
        "verdict": verdict,
    });
    writeln!(out, "{verdict}\n{record}").map_err(io)?;
    Ok(0)
}

fn signature_from_flags(agents: Option<Vec<String>>, atoms: Option<Vec<String>>) -> Result<Signature, Failure> {
    let agents: Vec<String> = agents.unwrap_or_else(|| vec!["a".into(), "b".into(), "c".into()]);
    let atoms: Vec<String> = atoms.unwrap_or_else(|| agents.iter().map(|a| format!("p_{a}")).collect());
    let atoms = atoms
        .into_iter()
        .map(|name| {
            let owner = name
                .rsplit_once('_')
                .map(|(_, o)| o.to_owned())
                .ok_or_else(|| usage(format!("atom `{name}` must be named <name>_<owner>")))?;
            Ok(LocalAtom::new(name, AgentId(owner)))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Signature::new(agents.into_iter().map(AgentId).collect(), atoms).map_err(|e| usage(e.to_string()))
}

fn translate(a: TranslateArgs, out: &mut dyn Write) -> CmdResult {
    let sig = match &a.model {
        Some(path) => load_model(path)?.signature(),
        None => signature_from_flags(a.agents, a.atoms)?,
    };
    let f = parse(&a.formula, &sig, TopPolicy::Glocal).map_err(|e| usage(format!("formula: {e}")))?;
    let top = translation_top(&sig);
    let (name, g) = match a.which {
        Which::Def => ("def", translate_def(&f, &top)),
        Which::Sharp => ("sharp", translate_sharp(&f, &top)),
        Which::Validity => ("validity", translate_validity(&f, &top)),
    };
    let sugared = print_sugared(&g, Some(&top));
    let class = classify(&g);
    let record = json!({
        "input": print(&f),
        "which": name,
        "output": sugared,
        "core": print(&g),
        "top": print(&top),
        "class": {
            "name": class.to_string(),
            "knowledge": class.knowledge,
            "atoms": class.atoms,
        },
    });
    writeln!(out, "{sugared}\n{record}").map_err(io)?;
    Ok(0)
}

fn theorem_family(a: &TheoremArgs) -> Result<FamilySpec, Failure> {
    let custom = a.agents.is_some() || a.exhaustive || a.random.is_some();
    if a.use_default || !custom {
        if custom {
            return Err(usage("--default cannot be combined with family flags"));
        }
        return Ok(FamilySpec::default_family());
    }
    let agents = a.agents.unwrap_or(2);
    let spec = ModelSpec::new(agents, a.atoms, a.max_facets.unwrap_or(if agents == 2 { 2 } else { 3 }));
    let mut parts = Vec::new();
    if a.exhaustive || a.random.is_none() {
        parts.push(FamilyPart::Exhaustive { spec });
    }
    if let Some(count) = a.random {
        let seed = a.model_seed.ok_or_else(|| usage("--random needs an explicit --model-seed"))?;
        parts.push(FamilyPart::Random { spec, seed, count });
    }
    Ok(FamilySpec { parts })
}

fn theorems(a: TheoremArgs, out: &mut dyn Write) -> CmdResult {
    let spec = theorem_family(&a)?;
    let family = ModelFamily::build(&spec).map_err(|e| usage(e.to_string()))?;
    let budget = Budget {
        seed: a.seed,
        count: a.count,
        depth: a.depth,
    };
    let reports: Vec<CheckReport> = if a.only.is_empty() {
        run_all(&family, &budget)
    } else {
        a.only
            .iter()
            .map(|id| run_theorem(id, &family, &budget))
            .collect::<Result<_, _>>()
            .map_err(|e| usage(e.to_string()))?
    };
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(io)?;
        for r in &reports {
            fs::write(dir.join(format!("{}.json", r.theorem_id)), r.to_json() + "\n").map_err(io)?;
        }
    }
    for r in &reports {
        writeln!(
            out,
            "{} {}: {} (models {}, points {}, formulas {}, {} ms)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.theorem_id,
            r.summary,
            r.stats.models,
            r.stats.points,
            r.stats.formulas,
            r.stats.elapsed_ms
        )
        .map_err(io)?;
    }
    Ok(if reports.iter().all(CheckReport::passed) { 0 } else { 1 })
}

fn pure(a: PureArgs, out: &mut dyn Write) -> CmdResult {
    let (label, model) = match (&a.model, &a.fixture) {
        (Some(path), _) => (path.display().to_string(), load_model(path)?),
        (None, Some(name)) => {
            let raw = fixtures::raw(name).ok_or_else(|| {
                usage(format!("no fixture `{name}`; known: {}", fixtures::NAMES.join(", ")))
            })?;
            (name.clone(), crate::complex::validate_model(&raw).map_err(|e| usage(e.to_string()))?)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let witnesses = purity_witnesses(&model);
    let verdict = if witnesses.is_empty() { "pure" } else { "impure" };
    writeln!(out, "{verdict}").map_err(io)?;
    for w in &witnesses {
        let facet = w.facet_name.clone().unwrap_or_else(|| format!("{{{}}}", w.facet.join(",")));
        writeln!(
            out,
            "  facet {facet}, agent {}: {} is {} three-valued, {} two-valued",
            w.agent, w.formula, w.three_valued, w.two_valued
        )
        .map_err(io)?;
    }
    let record = json!({ "model": label, "verdict": verdict, "witnesses": witnesses });
    writeln!(out, "{record}").map_err(io)?;
    Ok(0)
}

fn write_models(dir: &Path, models: &[SimplicialModel]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(io)?;
    for (i, m) in models.iter().enumerate() {
        fs::write(dir.join(format!("model_{i:05}.json")), m.to_raw().to_json_pretty() + "\n").map_err(io)?;
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    let spec = ModelSpec {
        agents: a.agents,
        atoms_per_agent: a.atoms,
        max_facets: a.max_facets,
        vertex_variants: a.variants,
    };
    let part = match (a.random, a.seed) {
        (Some(count), Some(seed)) => FamilyPart::Random { spec, seed, count },
        _ => FamilyPart::Exhaustive { spec },
    };
    let family = ModelFamily::build(&FamilySpec { parts: vec![part] }).map_err(|e| usage(e.to_string()))?;
    write_models(&a.out, family.models())?;
    writeln!(out, "wrote {} models to {}", family.len(), a.out.display()).map_err(io)?;
    Ok(0)
}

fn write_fixtures(a: FixturesArgs, out: &mut dyn Write) -> CmdResult {
    fs::create_dir_all(&a.out).map_err(io)?;
    for name in fixtures::NAMES {
        let raw = fixtures::raw(name).expect("listed fixture exists");
        fs::write(a.out.join(format!("{name}.json")), raw.to_json_pretty() + "\n").map_err(io)?;
    }
    writeln!(out, "wrote {} fixtures to {}", fixtures::NAMES.len(), a.out.display()).map_err(io)?;
    Ok(0)
}
