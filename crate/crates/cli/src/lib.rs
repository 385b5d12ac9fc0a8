//! Command-line front end for `cubeflat`.
//!
//! Every subcommand writes one JSON [`Report`]. Exit codes: 0 success,
//! 1 I/O failure, 2 parse or validation failure (including a fixture
//! mismatch), 3 negative verdict when `--fail-on-negative` is given.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use cubeflat::flat::{
    alignment_partition, classify_pair, dichotomy, disjointness_index, validate, FlatError, OrbitPairClass,
    PeriodicWallspace, WallRef,
};
use cubeflat::lattice::{tubular_obstruction, IntersectionData, ObstructionReport, PresentationError, TubularPresentation};
use cubeflat::median::{ComplexJson, CubeComplex, ValidationConfig, VertexSet};
use cubeflat::sageev::{Wallspace, WallspaceJson};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const REPORT_SCHEMA: &str = "cubeflat-report/1";
pub const DEFAULT_WINDOW: i64 = 6;

#[derive(Debug, Parser)]
#[command(name = "cubeflat", version, about = "Cube complexes, periodic walls on flats, lattice obstructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Skip partial-cube and median checks on complex input.
    #[arg(long, global = true)]
    pub no_strict: bool,
    /// Exit with code 3 when an obstruction fires or a hull is not cocompact.
    #[arg(long, global = true)]
    pub fail_on_negative: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual cube complex of a wallspace.
    Dual {
        input: PathBuf,
        /// Also write the DOT rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Convex hull of a vertex set.
    Hull {
        input: PathBuf,
        #[arg(long, value_parser = parse_vertex_list)]
        set: VertexList,
    },
    /// Common vertex of a convex family, or a disjoint pair.
    Helly {
        input: PathBuf,
        /// One family member per flag, e.g. `--set 0,1,2`.
        #[arg(long = "set", value_parser = parse_vertex_list, required = true)]
        sets: Vec<VertexList>,
    },
    /// Packing numbers of convex translates for every radius up to `--radius`.
    Pack {
        input: PathBuf,
        #[arg(long = "set", value_parser = parse_vertex_list, required = true)]
        sets: Vec<VertexList>,
        #[arg(long, default_value_t = 0)]
        radius: usize,
    },
    /// Orbit-pair relations and alignment classes of a periodic wallspace.
    Classify { input: PathBuf },
    /// Product of quasilines versus non-cocompact hull.
    Dichotomy {
        input: PathBuf,
        /// Rank of the acting lattice.
        #[arg(long)]
        rank: usize,
        /// Window radius N; evidence is recomputed at 2N.
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
    },
    /// Commensurability obstruction from intersection data (JSON) or a
    /// tubular presentation (text).
    Obstruct { input: PathBuf },
    /// Runs every shipped example and compares with its expected verdict.
    Fixtures {
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
    },
}

/// Comma-separated vertex ids, e.g. `0,3,5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexList(pub Vec<usize>);

fn parse_vertex_list(s: &str) -> Result<VertexList, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(VertexList)
}

#[derive(Debug, Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    pub inputs: Vec<String>,
    pub options: BTreeMap<&'static str, Value>,
}

#[derive(Debug, Serialize)]
pub struct ErrorPayload {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: CommandEcho,
    /// SHA-256 over the length-prefixed input files, in order.
    pub input_digest: String,
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorPayload>,
    pub warnings: Vec<String>,
    pub assumed_hypotheses: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{message}")]
    Invalid { message: String, detail: Option<Value> },
    #[error("{0}")]
    Presentation(#[from] PresentationError),
    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }

    fn payload(&self) -> ErrorPayload {
        let (kind, detail) = match self {
            CliError::Io { .. } => ("io", None),
            CliError::Parse(_) => ("parse", None),
            CliError::Invalid { detail, .. } => ("validation", detail.clone()),
            CliError::Presentation(PresentationError::Syntax { line, column, .. }) => {
                ("parse", Some(json!({ "line": line, "column": column })))
            }
            CliError::Presentation(PresentationError::Lattice { line, .. }) => {
                ("validation", Some(json!({ "line": line })))
            }
            CliError::FixtureMismatch(_) => ("fixture_mismatch", None),
        };
        ErrorPayload {
            kind,
            message: self.to_string(),
            detail,
        }
    }
}

impl From<FlatError> for CliError {
    fn from(e: FlatError) -> Self {
        let detail = match &e {
            FlatError::Invalid(v) => serde_json::to_value(v).ok(),
            _ => None,
        };
        CliError::Invalid {
            message: e.to_string(),
            detail,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        message: e.to_string(),
        detail: None,
    }
}

/// Parses the text presentation format: `rank p` then `edge t: (b) -> (c)` lines.
pub fn parse_presentation(text: &str) -> Result<TubularPresentation, PresentationError> {
    TubularPresentation::parse(text)
}

/// Outcome of one invocation.
pub struct Outcome {
    pub exit_code: i32,
    pub report: Report,
}

struct Context {
    inputs: Vec<(String, Vec<u8>)>,
    warnings: Vec<String>,
    hypotheses: Vec<String>,
    negative: bool,
    config: ValidationConfig,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let shown = path.display().to_string();
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: shown.clone(),
            source,
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Parse(format!("{shown}: {e}")))?;
        self.inputs.push((shown, bytes));
        Ok(text)
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (_, bytes) in &self.inputs {
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// A complex file, or a wallspace file whose dual is used.
    fn complex(&mut self, path: &Path) -> Result<CubeComplex, CliError> {
        let text = self.read(path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let complex = if value.get("points").is_some() {
            let j: WallspaceJson = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
            self.warnings.push("input is a wallspace; its dual complex is used".into());
            Wallspace::from_json(&j).and_then(|w| w.dual()).map_err(invalid)?.complex
        } else {
            let j: ComplexJson = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
            j.to_complex(&self.config).map_err(invalid)?
        };
        if !self.config.strict {
            self.warnings.push("strict validation disabled: median axioms were not checked".into());
        } else if complex.vertex_count() >= self.config.median_check_limit {
            self.warnings.push(format!(
                "complex has {} vertices; full median verification runs only below {}",
                complex.vertex_count(),
                self.config.median_check_limit
            ));
        }
        Ok(complex)
    }

    fn periodic(&mut self, path: &Path) -> Result<PeriodicWallspace, CliError> {
        let text = self.read(path)?;
        let pw = PeriodicWallspace::parse(&text)?;
        validate(&pw).map_err(FlatError::from)?;
        Ok(pw)
    }
}

fn vertex_set(c: &CubeComplex, vs: &VertexList) -> Result<VertexSet, CliError> {
    VertexSet::from_vertices(c.vertex_count(), vs.0.iter().copied()).map_err(invalid)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn echo(cli: &Cli) -> CommandEcho {
    let mut options = BTreeMap::new();
    options.insert("strict", json!(!cli.no_strict));
    options.insert("fail_on_negative", json!(cli.fail_on_negative));
    let (name, inputs): (&'static str, Vec<&Path>) = match &cli.command {
        Command::Dual { input, dot } => {
            if let Some(d) = dot {
                options.insert("dot", json!(d.display().to_string()));
            }
            ("dual", vec![input])
        }
        Command::Hull { input, set } => {
            options.insert("set", json!(set));
            ("hull", vec![input])
        }
        Command::Helly { input, sets } => {
            options.insert("sets", json!(sets));
            ("helly", vec![input])
        }
        Command::Pack { input, sets, radius } => {
            options.insert("sets", json!(sets));
            options.insert("radius", json!(radius));
            ("pack", vec![input])
        }
        Command::Classify { input } => ("classify", vec![input]),
        Command::Dichotomy { input, rank, window } => {
            options.insert("rank", json!(rank));
            options.insert("window", json!(window));
            ("dichotomy", vec![input])
        }
        Command::Obstruct { input } => ("obstruct", vec![input]),
        Command::Fixtures { window } => {
            options.insert("window", json!(window));
            ("fixtures", vec![])
        }
    };
    CommandEcho {
        name,
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        options,
    }
}

fn dispatch(cli: &Cli, cx: &mut Context) -> Result<Value, CliError> {
    match &cli.command {
        Command::Dual { input, dot } => {
            let text = cx.read(input)?;
            let j: WallspaceJson = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let ws = Wallspace::from_json(&j).map_err(invalid)?;
            let dual = ws.dual().map_err(invalid)?;
            let c = &dual.complex;
            let rendered = c.to_dot();
            if let Some(path) = dot {
                fs::write(path, &rendered).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            Ok(json!({
                "vertices": c.vertex_count(),
                "edges": c.edge_count(),
                "hyperplanes": c.hyperplane_count(),
                "complex": c.to_json(),
                "dot": rendered,
            }))
        }
        Command::Hull { input, set } => {
            let c = cx.complex(input)?;
            let s = vertex_set(&c, set)?;
            let h = c.hull(&s).map_err(invalid)?;
            Ok(json!({
                "set": s.to_vec(),
                "hull": h.to_vec(),
                "convex": h == s,
            }))
        }
        Command::Helly { input, sets } => {
            let c = cx.complex(input)?;
            let family: Vec<VertexSet> = sets.iter().map(|s| vertex_set(&c, s)).collect::<Result<_, _>>()?;
            Ok(to_value(&c.helly_point(&family).map_err(invalid)?))
        }
        Command::Pack { input, sets, radius } => {
            let c = cx.complex(input)?;
            let family: Vec<VertexSet> = sets.iter().map(|s| vertex_set(&c, s)).collect::<Result<_, _>>()?;
            let numbers: Vec<usize> = (0..=*radius)
                .map(|r| c.packing_number(&family, r))
                .collect::<Result<_, _>>()
                .map_err(invalid)?;
            Ok(json!({ "radius": radius, "packing_numbers": numbers }))
        }
        Command::Classify { input } => {
            let pw = cx.periodic(input)?;
            Ok(classify_value(&pw)?)
        }
        Command::Dichotomy { input, rank, window } => {
            let pw = cx.periodic(input)?;
            let report = dichotomy(&pw, *rank, *window)?;
            cx.negative = !report.verdict.is_product();
            cx.warnings.push(format!(
                "verdict evidence is computed on finite windows N={} and 2N={}",
                report.window, report.stability_window
            ));
            cx.hypotheses
                .push("the input lists every wall orbit meeting the flat, with exact crossing data".into());
            Ok(to_value(&report))
        }
        Command::Obstruct { input } => {
            let text = cx.read(input)?;
            let report = obstruct_text(&text)?;
            cx.negative = report.fired;
            cx.hypotheses.extend(report.hypotheses_assumed.iter().cloned());
            Ok(to_value(&report))
        }
        Command::Fixtures { window } => {
            for (name, text) in fixture_texts() {
                cx.inputs.push((name.to_string(), text.as_bytes().to_vec()));
            }
            let results = run_fixtures(*window);
            let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.name).collect();
            if failed.is_empty() {
                Ok(to_value(&results))
            } else {
                Err(CliError::FixtureMismatch(failed.join(", ")))
            }
        }
    }
}

/// Intersection data when the text is a JSON object, otherwise a presentation.
pub fn obstruct_text(text: &str) -> Result<ObstructionReport, CliError> {
    if text.trim_start().starts_with('{') {
        let data: IntersectionData = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        data.obstruction().map_err(invalid)
    } else {
        let t = parse_presentation(text)?;
        tubular_obstruction(&t).map_err(invalid)
    }
}

fn classify_value(pw: &PeriodicWallspace) -> Result<Value, CliError> {
    let refs = pw.refs();
    let mut pairs = Vec::new();
    let mut semi = Vec::new();
    for (i, &a) in refs.iter().enumerate() {
        for &b in &refs[i + 1..] {
            let rel = classify_pair(pw, a, b)?;
            if matches!(rel, OrbitPairClass::SemiCrossing { .. }) {
                semi.push((a, b));
            }
            pairs.push(json!({ "a": a.to_string(), "b": b.to_string(), "relation": rel }));
        }
    }
    let partition = alignment_partition(pw);
    let names = |q: &Vec<WallRef>| q.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    let disjointness: Vec<Value> = refs
        .iter()
        .map(|&r| disjointness_index(pw, r).map(|d| json!({ "orbit": r.to_string(), "index": d })))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "parallelism_classes": pw.classes.len(),
        "orbits": refs.len(),
        "pairs": pairs,
        "semi_crossing_pairs": semi.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        "alignment_partition": partition.iter().map(names).collect::<Vec<_>>(),
        "alignment_classes_defined": semi.is_empty(),
        "disjointness": disjointness,
    }))
}

fn fixture_texts() -> [(&'static str, &'static str); 6] {
    use cubeflat::fixtures::*;
    [
        ("standard-grid.json", STANDARD_GRID_JSON),
        ("halfplane.json", HALFPLANE_JSON),
        ("glide.json", GLIDE_JSON),
        ("three-directions.json", THREE_DIRECTIONS_JSON),
        ("generic.txt", GENERIC_TXT),
        ("two-crossing-walls.json", TWO_CROSSING_WALLS_JSON),
    ]
}

#[derive(Debug, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub expected: &'static str,
    pub observed: String,
    pub pass: bool,
}

/// Evaluates every shipped example on its own thread.
pub fn run_fixtures(window: i64) -> Vec<FixtureResult> {
    use cubeflat::fixtures;
    type Check = Box<dyn Fn() -> String + Send + Sync>;
    let verdict = |pw: PeriodicWallspace, rank: usize| -> Check {
        Box::new(move || match dichotomy(&pw, rank, window) {
            Ok(r) => match (&r.verdict.semi_crossing(), &r.verdict.excess_classes()) {
                (Some(_), _) => "non_cocompact/semi_crossing".into(),
                (_, Some(w)) => format!("non_cocompact/excess_classes {}>{}", w.count, w.rank),
                _ => format!("product_of_quasilines {}", r.factor_vertices.len()),
            },
            Err(e) => format!("error: {e}"),
        })
    };
    let fired = |r: Result<ObstructionReport, cubeflat::lattice::LatticeError>| match r {
        Ok(r) => format!("fired={} classes={} threshold={}", r.fired, r.class_count, r.threshold),
        Err(e) => format!("error: {e}"),
    };
    let checks: Vec<(&'static str, &'static str, Check)> = vec![
        ("standard-grid", "product_of_quasilines 2", verdict(fixtures::standard_grid(), 2)),
        ("halfplane", "non_cocompact/semi_crossing", verdict(fixtures::halfplane(), 1)),
        ("glide", "non_cocompact/excess_classes 2>1", verdict(fixtures::glide(), 1)),
        (
            "three_directions",
            "fired=true classes=3 threshold=3",
            Box::new(move || fired(fixtures::three_directions().obstruction())),
        ),
        (
            "generic",
            "fired=true classes=4 threshold=4",
            Box::new(move || fired(tubular_obstruction(&fixtures::generic()))),
        ),
        (
            "two-crossing-walls",
            "square",
            Box::new(|| match fixtures::two_crossing_walls().dual() {
                Ok(d) if d.complex.vertex_count() == 4 && d.complex.edge_count() == 4 && d.complex.crosses(0, 1) => {
                    "square".into()
                }
                Ok(d) => format!("{} vertices, {} edges", d.complex.vertex_count(), d.complex.edge_count()),
                Err(e) => format!("error: {e}"),
            }),
        ),
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|(name, expected, check)| {
                s.spawn(move || {
                    let observed = check();
                    FixtureResult {
                        name,
                        expected,
                        pass: observed == *expected,
                        observed,
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread")).collect()
    })
}

/// Runs one command without touching the process: no output is written
/// except the DOT file requested by `dual --dot`.
pub fn execute(cli: &Cli) -> Outcome {
    let mut cx = Context {
        inputs: Vec::new(),
        warnings: Vec::new(),
        hypotheses: Vec::new(),
        negative: false,
        config: if cli.no_strict {
            ValidationConfig::lenient()
        } else {
            ValidationConfig::default()
        },
    };
    let result = dispatch(cli, &mut cx);
    let (exit_code, result, error) = match result {
        Ok(v) => {
            let code = if cli.fail_on_negative && cx.negative { 3 } else { 0 };
            (code, Some(v), None)
        }
        Err(e) => (e.exit_code(), None, Some(e.payload())),
    };
    Outcome {
        exit_code,
        report: Report {
            schema: REPORT_SCHEMA,
            command: echo(cli),
            input_digest: cx.digest(),
            result,
            error,
            warnings: cx.warnings,
            assumed_hypotheses: cx.hypotheses,
        },
    }
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = execute(&cli);
    if let Some(err) = &outcome.report.error {
        eprintln!("cubeflat: {}", err.message);
    }
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cubeflat: {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit_code
}
