use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use palette_cli::suites::{self, Options, Status, Suite, M56, M56_PRIME};
use palette_core::families::FamilySpec;
use palette_core::interval::{check_interval_bound, find_interval_coloring, is_interval_coloring, IntervalSearch};
use palette_core::io::{
    export_dot, export_palette_dot, parse_color_matrix, parse_coloring, parse_multigraph, serialize_coloring,
    serialize_multigraph_file, GraphFile, Report,
};
use palette_core::palette_graph::{ForestCheck, PaletteMultigraph};
use palette_core::solver::{chi_prime_s, palette_index, palette_index_union, PaletteIndexResult};
use palette_core::{EdgeColoring, Error, Multigraph, SearchConfig};

/// Exit code when every check passed and every value is exact.
const EXIT_OK: u8 = 0;
/// A check failed or the input was rejected.
const EXIT_FAIL: u8 = 1;
/// Only bounds were obtained, or some checks were skipped.
const EXIT_BOUNDED: u8 = 3;

#[derive(Parser)]
#[command(name = "palette", version, about = "Palette index experiments on multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a multigraph from one of the built-in families.
    Generate(GenerateArgs),
    /// Compute the palette index of a multigraph file.
    PaletteIndex(SolveArgs),
    /// Compute the fewest colors attaining the palette index.
    ChiPrimeS(SolveArgs),
    /// Build the palette multigraph of a colored multigraph.
    PaletteGraph(PaletteGraphArgs),
    /// Check that a coloring is proper and count its palettes.
    CheckColoring(ColoringArgs),
    /// Check a coloring for the interval property, or search for an interval coloring.
    CheckInterval(IntervalArgs),
    /// Read a 1-based bipartite color matrix.
    Matrix(MatrixArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Family {
    Windmill,
    HDeltaT,
    GDelta,
    GDeltaTilde,
    Complete,
    CompleteBipartite,
    Path,
    Cycle,
    Star,
    Random,
    Tree,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    max_mult: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Budget {
    /// Largest color universe to search.
    #[arg(long)]
    max_colors: Option<u32>,
    /// Wall-clock budget in seconds.
    #[arg(long, env = "PALETTE_TIME_BUDGET")]
    time_budget: Option<f64>,
    /// Solver worker threads.
    #[arg(long, env = "PALETTE_JOBS", default_value_t = 1)]
    jobs: usize,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_colors: self.max_colors,
            time_budget: self.time_budget.map(Duration::from_secs_f64),
            jobs: self.jobs.max(1),
            ..SearchConfig::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    budget: Budget,
    /// Solve each connected component (or declared part) separately when that is exact.
    #[arg(long)]
    decompose: bool,
    /// Write the witness coloring here.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ColoringArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PaletteGraphArgs {
    #[command(flatten)]
    files: ColoringArgs,
    /// Drop the palette of this vertex before reporting.
    #[arg(long)]
    remove_palette_of: Option<usize>,
    /// Print the palette multigraph in DOT instead of a report.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Coloring to check; without it an interval coloring is searched for.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Also compare the palette index with Δ² - Δ + 1.
    #[arg(long)]
    bound: bool,
    #[command(flatten)]
    budget: Budget,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    M56,
    M56Prime,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Write the bipartite graph here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the 0-based coloring here.
    #[arg(long)]
    coloring_out: Option<PathBuf>,
    /// Print DOT of the colored graph.
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PaletteGraphIdentities,
    ForestLemma,
    GdeltaBounds,
    KnTable,
    Matrices,
    Conjecture,
    IntervalBound,
    Forests,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, num_args = 1.., required = true)]
    suite: Vec<SuiteArg>,
    #[arg(long, num_args = 1..)]
    delta: Vec<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    n_max: Option<usize>,
    /// Number of random graphs in the corpus.
    #[arg(long)]
    corpus: Option<usize>,
    /// Include the Δ = 6 instances.
    #[arg(long)]
    slow: bool,
    /// Per-graph budget in seconds.
    #[arg(long, env = "PALETTE_TIME_BUDGET", default_value_t = 20.0)]
    time_budget: f64,
    #[arg(long, env = "PALETTE_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Multigraph, String> {
    parse_multigraph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_coloring(path: &Path, g: &Multigraph) -> Result<EdgeColoring, String> {
    parse_coloring(&read(path)?, g).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    } else {
        print!("{}", report.to_text());
    }
}

fn exactness(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "bounded"
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, String> {
    value.ok_or_else(|| format!("this family needs --{flag}"))
}

fn generate(a: &GenerateArgs) -> Result<u8, String> {
    let spec = match a.family {
        Family::Windmill => FamilySpec::Windmill { delta: need(a.delta, "delta")? },
        Family::HDeltaT => FamilySpec::HDeltaT { delta: need(a.delta, "delta")?, t: need(a.t, "t")? },
        Family::GDelta => FamilySpec::GDelta { delta: need(a.delta, "delta")? },
        Family::GDeltaTilde => FamilySpec::GDeltaTilde { delta: need(a.delta, "delta")? },
        Family::Complete => FamilySpec::Complete { n: need(a.n, "n")? },
        Family::CompleteBipartite => FamilySpec::CompleteBipartite { m: need(a.m, "m")?, n: need(a.n, "n")? },
        Family::Path => FamilySpec::Path { n: need(a.n, "n")? },
        Family::Cycle => FamilySpec::Cycle { n: need(a.n, "n")? },
        Family::Star => FamilySpec::Star { n: need(a.n, "n")? },
        Family::Random => FamilySpec::Random { n: need(a.n, "n")?, p: a.p, max_mult: a.max_mult, seed: a.seed },
        Family::Tree => FamilySpec::Tree { n: need(a.n, "n")?, seed: a.seed },
    };
    let graph = spec.build().map_err(|e| e.to_string())?;
    let mut file = GraphFile { graph, names: Default::default() };
    if let FamilySpec::Windmill { delta } | FamilySpec::HDeltaT { delta, .. } = spec {
        file.names.insert(0, "u".to_string());
        for j in 0..delta {
            file.names.insert(j + 1, format!("v{j}"));
        }
    }
    let text = format!("# {}\n{}", serde_json::to_string(&spec).unwrap(), serialize_multigraph_file(&file));
    match &a.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn solve_palette_index(a: &SolveArgs, g: &Multigraph) -> Result<(PaletteIndexResult, Report), Error> {
    let cfg = a.budget.config();
    let mut report = Report::new();
    let r = if a.decompose {
        let u = palette_index_union(g, &cfg)?;
        report.push("path", format!("{:?}", u.path).to_lowercase());
        if !u.part_values.is_empty() {
            report.push("part_values", &u.part_values);
        }
        u.result
    } else {
        palette_index(g, &cfg)?
    };
    Ok((r, report))
}

fn palette_index_cmd(a: &SolveArgs) -> Result<u8, String> {
    let g = load_graph(&a.input)?;
    let (r, extra) = solve_palette_index(a, &g).map_err(|e| e.to_string())?;
    let mut report = Report::new().with("palette_index", format!("{} {}", r.value, exactness(r.exact)));
    report.push("lower_bound", r.lower_bound);
    report.push("colors_used", r.colors_used);
    for (k, v) in extra.entries() {
        report.push(k.clone(), v);
    }
    report.push("nodes", r.nodes);
    report.push("elapsed_ms", r.elapsed.as_millis() as u64);
    if let Some(path) = &a.witness {
        write(path, &serialize_coloring(&r.witness))?;
        report.push("witness", path.display().to_string());
    }
    emit(&report, a.json);
    Ok(if r.exact { EXIT_OK } else { EXIT_BOUNDED })
}

fn chi_prime_s_cmd(a: &SolveArgs) -> Result<u8, String> {
    let g = load_graph(&a.input)?;
    let cfg = a.budget.config();
    match chi_prime_s(&g, &cfg) {
        Ok(r) => {
            let mut report = Report::new()
                .with("palette_index", format!("{} exact", r.palette_index))
                .with("chi_prime_s", r.k)
                .with("chromatic_index", r.chromatic_index);
            if let Some(path) = &a.witness {
                write(path, &serialize_coloring(&r.witness))?;
                report.push("witness", path.display().to_string());
            }
            emit(&report, a.json);
            Ok(EXIT_OK)
        }
        Err(Error::Inexact) => {
            let r = palette_index(&g, &cfg).map_err(|e| e.to_string())?;
            let report = Report::new()
                .with("palette_index", format!("{} bounded", r.value))
                .with("lower_bound", r.lower_bound)
                .with("chi_prime_s", "unknown");
            emit(&report, a.json);
            Ok(EXIT_BOUNDED)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn coloring_summary(g: &Multigraph, c: &EdgeColoring) -> Report {
    let mut report = Report::new();
    match c.conflict(g) {
        Ok(None) => {
            report.push("proper", true);
            report.push("colors_used", c.used_count());
            report.push("palettes", c.palette_count(g).unwrap());
        }
        Ok(Some((e, f, v, col))) => {
            report.push("proper", false);
            report.push("conflict", format!("edges {e} and {f} share vertex {v} and color {col}"));
        }
        Err(e) => {
            report.push("proper", false);
            report.push("error", e.to_string());
        }
    }
    report
}

fn check_coloring_cmd(a: &ColoringArgs) -> Result<u8, String> {
    let g = load_graph(&a.input)?;
    let c = load_coloring(&a.coloring, &g)?;
    let report = coloring_summary(&g, &c);
    emit(&report, a.json);
    Ok(if c.is_proper(&g).unwrap_or(false) { EXIT_OK } else { EXIT_FAIL })
}

fn palette_graph_cmd(a: &PaletteGraphArgs) -> Result<u8, String> {
    let g = load_graph(&a.files.input)?;
    let c = load_coloring(&a.files.coloring, &g)?;
    let mut gamma = PaletteMultigraph::build(&g, &c).map_err(|e| e.to_string())?;
    if let Some(v) = a.remove_palette_of {
        let p = c.palette_of(&g, v).map_err(|e| e.to_string())?;
        gamma = gamma.remove_palette(&p).map_err(|e| e.to_string())?;
    }
    if a.dot {
        print!("{}", export_palette_dot(&gamma));
        return Ok(EXIT_OK);
    }
    let mut report = Report::new()
        .with("vertices", gamma.vertex_count())
        .with("edges", gamma.edge_count())
        .with("loops", gamma.loop_count());
    let forest = match gamma.forest_check() {
        ForestCheck::Forest => "yes".to_string(),
        ForestCheck::Loop(p) => format!("no: loop at {p}"),
        ForestCheck::MultiEdge(p, q) => format!("no: parallel edges {p} {q}"),
        ForestCheck::Cycle(ps) => format!("no: cycle {}", ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
    };
    report.push("simple_forest", forest);
    if let Ok(avg) = gamma.average_degree() {
        report.push("average_degree", format!("{}/{}", avg.degree_sum, avg.vertices));
    }
    for p in gamma.palettes() {
        report.push(format!("degree.{p}"), gamma.degree(p).unwrap());
    }
    emit(&report, a.files.json);
    Ok(EXIT_OK)
}

fn check_interval_cmd(a: &IntervalArgs) -> Result<u8, String> {
    let g = load_graph(&a.input)?;
    let cfg = a.budget.config();
    let mut report = Report::new();
    let mut code = EXIT_OK;
    if let Some(path) = &a.coloring {
        let c = load_coloring(path, &g)?;
        let r = is_interval_coloring(&g, &c).map_err(|e| e.to_string())?;
        report.push("interval", r.is_interval);
        report.push("cyclic_interval", r.is_cyclic_interval);
        report.push("colors", r.t);
        if let Some(v) = r.offending_vertex {
            report.push("offending_vertex", v);
        }
        if !r.is_interval {
            code = EXIT_FAIL;
        }
    } else {
        match find_interval_coloring(&g, &cfg).map_err(|e| e.to_string())? {
            IntervalSearch::Found(c) => {
                report.push("interval_coloring", format!("found with {} colors", c.k()));
                report.push("coloring", serialize_coloring(&c).trim_end().replace('\n', "; "));
            }
            IntervalSearch::None => {
                report.push("interval_coloring", "none exact");
                code = EXIT_FAIL;
            }
            IntervalSearch::Unknown => {
                report.push("interval_coloring", "unknown");
                code = EXIT_BOUNDED;
            }
        }
    }
    if a.bound {
        let r = check_interval_bound(&g, &cfg).map_err(|e| e.to_string())?;
        report.push("bound", r.bound);
        if let Some(v) = r.palette_index {
            report.push("palette_index", v);
        }
        report.push("bound_status", r.status);
    }
    emit(&report, a.json);
    Ok(code)
}

fn matrix_cmd(a: &MatrixArgs) -> Result<u8, String> {
    let text = match (a.builtin, &a.file) {
        (Some(Builtin::M56), _) => M56.to_string(),
        (Some(Builtin::M56Prime), _) => M56_PRIME.to_string(),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err("give --file or --builtin".into()),
    };
    let (g, c) = match parse_color_matrix(&text) {
        Ok(x) => x,
        Err(e @ Error::MatrixRepeat { .. }) => {
            emit(&Report::new().with("proper", false).with("error", e.to_string()), a.json);
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e.to_string()),
    };
    if let Some(path) = &a.graph_out {
        write(path, &serialize_multigraph_file(&GraphFile { graph: g.clone(), names: Default::default() }))?;
    }
    if let Some(path) = &a.coloring_out {
        write(path, &serialize_coloring(&c))?;
    }
    if a.dot {
        print!("{}", export_dot(&g, Some(&c)));
        return Ok(EXIT_OK);
    }
    // u_0 is joined to every column vertex
    let cols = g.degree(0);
    let mut report = Report::new().with("graph", format!("K{},{}", g.vertex_count() - cols, cols));
    for (k, v) in coloring_summary(&g, &c).entries() {
        report.push(k.clone(), v);
    }
    emit(&report, a.json);
    Ok(EXIT_OK)
}

fn verify_cmd(a: &VerifyArgs) -> Result<u8, String> {
    let opts = Options {
        seed: a.seed,
        samples: a.samples,
        deltas: a.delta.clone(),
        n_max: a.n_max,
        corpus: a.corpus,
        slow: a.slow,
        cfg: SearchConfig::default()
            .with_time_budget(Duration::from_secs_f64(a.time_budget))
            .with_jobs(a.jobs.max(1)),
    };
    let mut chosen: Vec<Suite> = Vec::new();
    for s in &a.suite {
        let add: &[Suite] = match s {
            SuiteArg::PaletteGraphIdentities => &[Suite::PaletteGraphIdentities],
            SuiteArg::ForestLemma => &[Suite::ForestLemma],
            SuiteArg::GdeltaBounds => &[Suite::GdeltaBounds],
            SuiteArg::KnTable => &[Suite::KnTable],
            SuiteArg::Matrices => &[Suite::Matrices],
            SuiteArg::Conjecture => &[Suite::Conjecture],
            SuiteArg::IntervalBound => &[Suite::IntervalBound],
            SuiteArg::Forests => &[Suite::Forests],
            SuiteArg::All => &Suite::ALL,
        };
        chosen.extend(add);
    }
    chosen.sort();
    chosen.dedup();
    let mut worst = Status::Pass;
    let mut reports = Vec::new();
    for suite in chosen {
        let r = suites::run(suite, &opts);
        worst = match (worst, r.status()) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Skipped, _) | (_, Status::Skipped) => Status::Skipped,
            _ => Status::Pass,
        };
        if a.json {
            reports.push(r.to_report().to_json());
        } else {
            print!("{}", r.to_report().to_text());
        }
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&reports).unwrap());
    }
    Ok(match worst {
        Status::Pass => EXIT_OK,
        Status::Skipped => EXIT_BOUNDED,
        Status::Fail => EXIT_FAIL,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::PaletteIndex(a) => palette_index_cmd(a),
        Command::ChiPrimeS(a) => chi_prime_s_cmd(a),
        Command::PaletteGraph(a) => palette_graph_cmd(a),
        Command::CheckColoring(a) => check_coloring_cmd(a),
        Command::CheckInterval(a) => check_interval_cmd(a),
        Command::Matrix(a) => matrix_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
