use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ocn_core::analysis::{
    analyze, bw_lower_bound, c_coefficient_bw, c_coefficient_same, formula_ocn_knn,
    same_color_lower_bound, AnalysisError, IdentityStatus, SameColorCap, StructureAnalysis,
};
use ocn_core::drawing::{crossing_number, crossing_number_by_quadruples};
use ocn_core::generators::{convex_alternating, random_generic, GenerateError, GridSpec};
use ocn_core::search::{
    search, AnnealParams, Certificate, GraphFamily, Objective, SearchError, SearchTask, Strategy,
    TracePoint,
};
use serde::Serialize;

use crate::document::{DocumentError, DrawingDocument};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ocn",
    version,
    about = "Orchard crossing numbers of rectilinear drawings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Crossing number of a drawing, by edges and by 4-subsets.
    Eval(InputArgs),
    /// A/B/C split, type tables, vertex profiles and identity checks of a K_{n,n} drawing.
    Decompose(InputArgs),
    /// Compare the convex alternating drawing with 4n C(n,3) for n = 1..=max_n.
    Verify {
        #[arg(long)]
        max_n: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form values and coefficient tables for n = 1..=max_n.
    Formula {
        #[arg(long)]
        max_n: u64,
        /// Also list the bw and same-color coefficients per n.
        #[arg(long)]
        coefficients: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a drawing document.
    Gen(GenArgs),
    /// Minimize or maximize the crossing number.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Read the drawing from this file instead of stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["convex_alternating", "random"]))]
pub struct GenArgs {
    /// Convex alternating drawing of K_{n,n}.
    #[arg(long, value_name = "N")]
    pub convex_alternating: Option<usize>,
    /// Random generic K_{b,w} drawing; needs --black, --white and --seed.
    #[arg(long, requires_all = ["black", "white", "seed"])]
    pub random: bool,
    #[arg(long)]
    pub black: Option<usize>,
    #[arg(long)]
    pub white: Option<usize>,
    /// Coordinates are drawn from 0..=range.
    #[arg(long, default_value_t = 100)]
    pub range: i64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("family").required(true).args(["knn", "complete", "graph"]))]
#[command(group = clap::ArgGroup::new("strategy").required(true).args(["exhaustive", "anneal"]))]
pub struct SearchArgs {
    /// Search drawings of K_{n,n}.
    #[arg(long, value_name = "N")]
    pub knn: Option<usize>,
    /// Search drawings of K_m (all vertices black).
    #[arg(long, value_name = "M")]
    pub complete: Option<usize>,
    /// Use the colors and edges of this document; its coordinates are ignored.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<PathBuf>,
    #[arg(long, conflicts_with = "maximize")]
    pub minimize: bool,
    #[arg(long)]
    pub maximize: bool,
    /// Visit every generic placement on --grid.
    #[arg(long, requires = "grid")]
    pub exhaustive: bool,
    #[arg(long, value_name = "WxH")]
    pub grid: Option<GridSpec>,
    /// Seeded simulated annealing; needs --seed.
    #[arg(long, requires = "seed")]
    pub anneal: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exhaustive: largest enumeration allowed. Anneal: total evaluations.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub cooling: Option<f64>,
    #[arg(long)]
    pub radius: Option<i64>,
    /// Coordinates stay in 0..=box.
    #[arg(long = "box")]
    pub box_size: Option<i64>,
    #[arg(long)]
    pub restarts: Option<u32>,
    #[arg(long)]
    pub max_retries: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 10_000_000;
const DEFAULT_ANNEAL_BUDGET: u64 = 200_000;

/// What a command produced: text for the output sink and whether an
/// invariant check failed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub output: Option<PathBuf>,
    pub invariant_failure: Option<String>,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Self {
        Outcome {
            text,
            output,
            invariant_failure: None,
        }
    }
}

pub fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval(args) => eval(&args, stdin),
        Command::Decompose(args) => decompose(&args, stdin),
        Command::Verify { max_n, out } => verify(max_n, out),
        Command::Formula {
            max_n,
            coefficients,
            out,
        } => formula(max_n, coefficients, out),
        Command::Gen(args) => gen(args),
        Command::Search(args) => run_search(args),
    }
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
        }
    }
    Ok(text)
}

fn load_document(text: &str) -> Result<DrawingDocument, CliError> {
    DrawingDocument::parse(text).map_err(CliError::from)
}

fn render<T: Serialize>(value: &T, json: bool, human: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
        s.push('\n');
        s
    } else {
        human(value)
    }
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub vertices: usize,
    pub edges: usize,
    pub crossing_number: u64,
    pub by_quadruples: u64,
    pub agree: bool,
}

fn eval(args: &InputArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let doc = load_document(&read_input(args.input.as_ref(), stdin)?)?;
    let d = doc.to_drawing().map_err(DocumentError::from)?;
    let report = EvalReport {
        vertices: d.vertex_count(),
        edges: d.graph().edges().len(),
        crossing_number: crossing_number(&d),
        by_quadruples: crossing_number_by_quadruples(&d),
        agree: false,
    };
    let report = EvalReport {
        agree: report.crossing_number == report.by_quadruples,
        ..report
    };
    let text = render(&report, args.out.json, |r| {
        format!(
            "crossing number: {}\nby 4-subsets:    {}\nvertices: {}, edges: {}\n",
            r.crossing_number, r.by_quadruples, r.vertices, r.edges
        )
    });
    let mut outcome = Outcome::ok(text, args.out.output.clone());
    if !report.agree {
        outcome.invariant_failure = Some(format!(
            "evaluators disagree: {} by edges, {} by 4-subsets",
            report.crossing_number, report.by_quadruples
        ));
    }
    Ok(outcome)
}

fn decompose(args: &InputArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let doc = load_document(&read_input(args.input.as_ref(), stdin)?)?;
    let d = doc.to_drawing().map_err(DocumentError::from)?;
    let analysis = analyze(&d)?;
    let text = render(&analysis, args.out.json, human_decomposition);
    let mut outcome = Outcome::ok(text, args.out.output.clone());
    let failed: Vec<String> = analysis
        .identities
        .failures()
        .map(|c| match c.class {
            Some(class) => format!("{} [{}]", c.name, class.name()),
            None => c.name.clone(),
        })
        .collect();
    if !failed.is_empty() {
        outcome.invariant_failure = Some(format!("identity checks failed: {}", failed.join(", ")));
    }
    Ok(outcome)
}

fn human_decomposition(a: &StructureAnalysis) -> String {
    let mut s = String::new();
    let d = &a.decomposition;
    let _ = writeln!(s, "n = {}", a.n);
    let _ = writeln!(
        s,
        "A = {}  B = {}  C = {}  total = {}",
        d.a, d.b, d.c, d.total
    );
    let _ = writeln!(s, "4-subset crossing number = {}", a.crossing_number);
    let _ = writeln!(s, "4n C(n,3) = {}", a.formula);
    for (t, p) in a.type_tables.iter().zip(&a.profiles) {
        let _ = writeln!(s, "\n[{}] cap {}", t.class.name(), t.cap);
        let _ = writeln!(s, "  y = {:?}", t.y);
        for e in &t.x {
            let _ = writeln!(s, "  x({}, {}) = {}", e.i, e.j, e.count);
        }
        for (k, seq) in p.sequences.iter().enumerate() {
            let _ = writeln!(s, "  sequence {}: {:?}", k + 1, seq);
        }
        for e in &p.p {
            let _ = writeln!(s, "  p({}, {}) = {}", e.s, e.t, e.count);
        }
    }
    let _ = writeln!(s, "\nchecks:");
    for c in &a.identities.checks {
        let status = match c.status {
            IdentityStatus::Pass => "pass",
            IdentityStatus::Fail => "FAIL",
            IdentityStatus::Vacuous => "vacuous",
        };
        let class = c
            .class
            .map(|k| format!(" [{}]", k.name()))
            .unwrap_or_default();
        let witness = c
            .witness
            .as_deref()
            .map(|w| format!(": {w}"))
            .unwrap_or_default();
        let _ = writeln!(s, "  {status:7} {}{class}{witness}", c.name);
    }
    s
}

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub n: u64,
    pub formula: u64,
    pub evaluated: u64,
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub all_match: bool,
    pub rows: Vec<VerifyRow>,
}

fn verify(max_n: u64, out: OutputArgs) -> Result<Outcome, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let formula = formula_ocn_knn(n)?;
        let size =
            usize::try_from(n).map_err(|_| CliError::Invalid(format!("n = {n} too large")))?;
        let evaluated = crossing_number(&convex_alternating(size)?);
        rows.push(VerifyRow {
            n,
            formula,
            evaluated,
            matches: formula == evaluated,
        });
    }
    let report = VerifyReport {
        all_match: rows.iter().all(|r| r.matches),
        rows,
    };
    let text = render(&report, out.json, |r| {
        let mut s = format!(
            "{:>4} {:>14} {:>14}  match\n",
            "n", "4n C(n,3)", "evaluated"
        );
        for row in &r.rows {
            let _ = writeln!(
                s,
                "{:>4} {:>14} {:>14}  {}",
                row.n,
                row.formula,
                row.evaluated,
                if row.matches { "yes" } else { "NO" }
            );
        }
        s
    });
    let mut outcome = Outcome::ok(text, out.output);
    if let Some(bad) = report.rows.iter().find(|r| !r.matches) {
        outcome.invariant_failure = Some(format!(
            "n = {}: convex drawing evaluates to {}, formula gives {}",
            bad.n, bad.evaluated, bad.formula
        ));
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
pub struct FormulaRow {
    pub n: u64,
    pub ocn: u64,
    pub bw_bound: u64,
    pub same_color_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_bw: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_same: Option<Vec<i64>>,
}

fn coefficient(v: Result<i128, AnalysisError>) -> Result<i64, CliError> {
    let v = v?;
    i64::try_from(v).map_err(|_| CliError::Invalid(format!("coefficient {v} exceeds 64 bits")))
}

fn formula(max_n: u64, coefficients: bool, out: OutputArgs) -> Result<Outcome, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let (c_bw, c_same) = if coefficients {
            let bw = (0..=(n - 1) / 2)
                .map(|s| coefficient(c_coefficient_bw(s, n)))
                .collect::<Result<Vec<_>, _>>()?;
            let same = (1..=(n - 1) / 2)
                .map(|s| coefficient(c_coefficient_same(s, n, SameColorCap::SameColorTypes)))
                .collect::<Result<Vec<_>, _>>()?;
            (Some(bw), Some(same))
        } else {
            (None, None)
        };
        rows.push(FormulaRow {
            n,
            ocn: formula_ocn_knn(n)?,
            bw_bound: bw_lower_bound(n)?,
            same_color_bound: same_color_lower_bound(n)?,
            c_bw,
            c_same,
        });
    }
    let text = render(&rows, out.json, |rows| {
        let mut s = format!(
            "{:>4} {:>14} {:>14} {:>14}\n",
            "n", "4n C(n,3)", "2n C(n,3)", "n C(n,3)"
        );
        for r in rows {
            let _ = write!(
                s,
                "{:>4} {:>14} {:>14} {:>14}",
                r.n, r.ocn, r.bw_bound, r.same_color_bound
            );
            if let (Some(bw), Some(same)) = (&r.c_bw, &r.c_same) {
                let _ = write!(s, "  c_bw {bw:?}  c_same {same:?}");
            }
            s.push('\n');
        }
        s
    });
    Ok(Outcome::ok(text, out.output))
}

fn gen(args: GenArgs) -> Result<Outcome, CliError> {
    let d = match (args.convex_alternating, args.random) {
        (Some(n), false) => convex_alternating(n)?,
        (None, true) => {
            let (Some(black), Some(white), Some(seed)) = (args.black, args.white, args.seed) else {
                return Err(CliError::Usage(
                    "--random needs --black, --white and --seed".into(),
                ));
            };
            random_generic(black, white, args.range, seed)?
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --convex-alternating and --random".into(),
            ))
        }
    };
    let mut text = DrawingDocument::from_drawing(&d).to_json();
    text.push('\n');
    Ok(Outcome::ok(text, args.output))
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub objective: Objective,
    pub certificate: Certificate,
    pub value: u64,
    /// `4n C(n,3)` when searching `K_{n,n}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_optimum: Option<u64>,
    pub evaluations: u64,
    pub seed: u64,
    pub best_restart: u32,
    pub trace: Vec<TracePoint>,
    pub drawing: DrawingDocument,
}

fn run_search(args: SearchArgs) -> Result<Outcome, CliError> {
    let family = match (args.knn, args.complete, &args.graph) {
        (Some(n), None, None) => GraphFamily::CompleteBipartite { n },
        (None, Some(m), None) => GraphFamily::Complete { m },
        (None, None, Some(path)) => {
            let doc = load_document(&read_input(Some(path), &mut std::io::empty())?)?;
            GraphFamily::Explicit {
                colors: doc.colors(),
                graph: doc.graph().map_err(DocumentError::from)?,
            }
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --knn, --complete, --graph".into(),
            ))
        }
    };
    let objective = if args.maximize {
        Objective::Maximize
    } else {
        Objective::Minimize
    };
    let (strategy, budget) = match (args.exhaustive, args.anneal) {
        (true, false) => {
            let grid = args
                .grid
                .ok_or_else(|| CliError::Usage("--exhaustive needs --grid".into()))?;
            (
                Strategy::Exhaustive { grid },
                args.budget.unwrap_or(DEFAULT_EXHAUSTIVE_BUDGET),
            )
        }
        (false, true) => {
            let mut p = AnnealParams::for_family(&family);
            if let Some(v) = args.temperature {
                p.initial_temperature = v;
            }
            if let Some(v) = args.cooling {
                p.cooling = v;
            }
            if let Some(v) = args.radius {
                p.radius = v;
            }
            if let Some(v) = args.box_size {
                p.box_size = v;
            }
            if let Some(v) = args.restarts {
                p.restarts = v;
            }
            if let Some(v) = args.max_retries {
                p.max_retries = v;
            }
            (
                Strategy::Anneal(p),
                args.budget.unwrap_or(DEFAULT_ANNEAL_BUDGET),
            )
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --exhaustive, --anneal".into(),
            ))
        }
    };
    let seed = args.seed.unwrap_or(0);
    let task = SearchTask {
        family: family.clone(),
        objective,
        strategy,
        seed,
        budget,
    };
    let result = search(&task)?;
    let report = SearchReport {
        objective,
        certificate: result.certificate,
        value: result.best_value,
        known_optimum: family.known_optimum(),
        evaluations: result.evaluations,
        seed,
        best_restart: result.best_restart,
        trace: result.trace,
        drawing: DrawingDocument::from_drawing(&result.best),
    };
    let text = render(&report, args.out.json, |r| {
        let mut s = format!(
            "{} value: {}\ncertificate: {}\nevaluations: {}\n",
            match r.objective {
                Objective::Minimize => "minimum",
                Objective::Maximize => "maximum",
            },
            r.value,
            match r.certificate {
                Certificate::ExhaustiveProof => "exhaustive over the grid",
                Certificate::HeuristicBest => "heuristic best",
            },
            r.evaluations
        );
        if let Some(opt) = r.known_optimum {
            let _ = writeln!(s, "4n C(n,3): {opt}");
        }
        let _ = writeln!(s, "drawing:\n{}", r.drawing.to_json());
        s
    });
    Ok(Outcome::ok(text, args.out.output))
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::InvariantViolation(msg) => CliError::Invariant(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(e: GenerateError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Inconsistent(msg) => CliError::Invariant(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}
