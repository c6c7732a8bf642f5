//! Verification suites: each check recomputes a claimed value and reports pass, fail or skipped.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use palette_core::coloring::random_proper_coloring;
use palette_core::families::{complete, g_delta, h_delta_t, random_multigraph, random_tree};
use palette_core::interval::{check_interval_bound, search_interval_coloring, BoundStatus, IntervalSearch};
use palette_core::io::{parse_color_matrix, serialize_coloring, serialize_multigraph, Report};
use palette_core::palette_graph::{palette_class_simple_degree, PaletteMultigraph};
use palette_core::solver::{self, chi_prime_s, palette_index, palette_index_union, UnionPath};
use palette_core::{Error, Multigraph, SearchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{named_graphs, random_simple_graphs, NamedGraph};

pub const M56: &str = include_str!("../data/m56.txt");
pub const M56_PRIME: &str = include_str!("../data/m56_prime.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
}

fn check(name: impl Into<String>, claim: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    let status = if ok { Status::Pass } else { Status::Fail };
    Check { name: name.into(), claim, status, detail: detail.into() }
}

fn skipped(name: impl Into<String>, claim: &'static str, detail: impl Into<String>) -> Check {
    Check { name: name.into(), claim, status: Status::Skipped, detail: detail.into() }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    /// Fail beats skipped beats pass.
    pub fn status(&self) -> Status {
        let has = |s| self.checks.iter().any(|c| c.status == s);
        if has(Status::Fail) {
            Status::Fail
        } else if has(Status::Skipped) || self.checks.is_empty() {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new().with("suite", &self.suite);
        for c in &self.checks {
            r.push(format!("check.{}", c.name), format!("{} [{}] {}", c.status.as_str(), c.claim, c.detail).trim_end());
        }
        r.push("status", self.status().as_str());
        r.push("elapsed_ms", self.elapsed.as_millis() as u64);
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    PaletteGraphIdentities,
    ForestLemma,
    GdeltaBounds,
    KnTable,
    Matrices,
    Conjecture,
    IntervalBound,
    Forests,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::PaletteGraphIdentities,
        Suite::ForestLemma,
        Suite::GdeltaBounds,
        Suite::KnTable,
        Suite::Matrices,
        Suite::Conjecture,
        Suite::IntervalBound,
        Suite::Forests,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PaletteGraphIdentities => "palette-graph-identities",
            Suite::ForestLemma => "forest-lemma",
            Suite::GdeltaBounds => "gdelta-bounds",
            Suite::KnTable => "kn-table",
            Suite::Matrices => "matrices",
            Suite::Conjecture => "conjecture",
            Suite::IntervalBound => "interval-bound",
            Suite::Forests => "forests",
        }
    }
}

/// Parameters shared by all suites; each suite reads the ones it needs.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub samples: Option<usize>,
    pub deltas: Vec<usize>,
    pub n_max: Option<usize>,
    pub corpus: Option<usize>,
    pub slow: bool,
    /// Per-graph solver configuration.
    pub cfg: SearchConfig,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 7,
            samples: None,
            deltas: Vec::new(),
            n_max: None,
            corpus: None,
            slow: false,
            cfg: SearchConfig::default().with_time_budget(Duration::from_secs(20)),
        }
    }
}

pub fn run(suite: Suite, opts: &Options) -> SuiteReport {
    let started = Instant::now();
    let checks = match suite {
        Suite::PaletteGraphIdentities => palette_graph_identities(opts),
        Suite::ForestLemma => forest_lemma(opts),
        Suite::GdeltaBounds => gdelta_bounds(opts),
        Suite::KnTable => kn_table(opts),
        Suite::Matrices => matrices(),
        Suite::Conjecture => conjecture(opts),
        Suite::IntervalBound => interval_bound(opts),
        Suite::Forests => forests(opts),
    };
    SuiteReport { suite: suite.name().to_string(), checks, elapsed: started.elapsed() }
}

fn colored_sample(rng: &mut ChaCha8Rng, n_max: usize) -> (Multigraph, palette_core::EdgeColoring) {
    let n = rng.gen_range(2..=n_max);
    let p = rng.gen_range(0.2..0.9);
    let mult = rng.gen_range(1..=3);
    let g = random_multigraph(n, p, mult, rng.gen()).unwrap();
    let k = (2 * g.max_degree()).max(1) as u32 + rng.gen_range(0..=3);
    let c = random_proper_coloring(&g, k, rng).expect("2Δ colors never get stuck");
    (g, c)
}

const IDENTITY: &str = "palette multigraph identities";

/// `|V(Γ)|` is the number of palettes, `|E(Γ)| = |E(G_s)|`, and each
/// palette's degree is the sum of simple degrees of the vertices carrying it.
pub fn palette_graph_identities(opts: &Options) -> Vec<Check> {
    let samples = opts.samples.unwrap_or(500);
    let n_max = opts.n_max.unwrap_or(10).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut violations = Vec::new();
    for i in 0..samples {
        let (g, c) = colored_sample(&mut rng, n_max);
        let gamma = PaletteMultigraph::build(&g, &c).unwrap();
        if gamma.vertex_count() != c.palette_count(&g).unwrap() {
            violations.push(format!("sample {i}: vertex count"));
        }
        if gamma.edge_count() != g.simple_projection().edge_count() {
            violations.push(format!("sample {i}: edge count"));
        }
        for p in gamma.palettes() {
            if gamma.degree(p).unwrap() != palette_class_simple_degree(&g, &c, p).unwrap() {
                violations.push(format!("sample {i}: degree of {p}"));
            }
        }
    }
    vec![check(
        "identities",
        IDENTITY,
        violations.is_empty(),
        format!("{} samples, {} violations {}", samples, violations.len(), violations.join("; ")),
    )]
}

const FOREST: &str = "palette multigraph minus the central palette is a forest";

/// On random colorings of `H^Δ_t`, dropping the center's palette from `Γ`
/// leaves a simple forest whose degrees count the rim vertices per palette.
pub fn forest_lemma(opts: &Options) -> Vec<Check> {
    let samples = opts.samples.unwrap_or(100);
    let deltas = if opts.deltas.is_empty() { vec![4, 6] } else { opts.deltas.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for delta in deltas {
        if delta < 4 || delta % 2 == 1 {
            out.push(skipped(format!("delta{delta}"), FOREST, "Δ must be even and at least 4"));
            continue;
        }
        for t in 1..=delta - 2 {
            let w = h_delta_t(delta, t).unwrap();
            let g = &w.graph;
            let mut forests = 0;
            let mut degree_ok = 0;
            for _ in 0..samples {
                let k = (delta + rng.gen_range(0..=delta)) as u32;
                let c = loop {
                    if let Some(c) = random_proper_coloring(g, k, &mut rng) {
                        break c;
                    }
                };
                let gamma = PaletteMultigraph::build(g, &c).unwrap();
                let minus = gamma.remove_palette(&c.palette_of(g, w.center()).unwrap()).unwrap();
                forests += usize::from(minus.is_simple_forest());
                let mut count = BTreeMap::new();
                for j in 0..delta {
                    *count.entry(c.palette_of(g, w.rim(j)).unwrap()).or_insert(0) += 1;
                }
                degree_ok += usize::from(minus.palettes().iter().all(|p| minus.degree(p).unwrap() == count[p]));
            }
            out.push(check(
                format!("H{delta}_{t}"),
                FOREST,
                forests == samples && degree_ok == samples,
                format!("forests {forests}/{samples}, degrees {degree_ok}/{samples}"),
            ));
        }
    }
    out
}

const GDELTA: &str = "Δ/2(Δ-2) < š(G^Δ) < (Δ+1)(Δ-2)";
const HLOWER: &str = "š(H^Δ_t) > Δ/2 + 1";

pub fn gdelta_bounds(opts: &Options) -> Vec<Check> {
    let deltas = match (opts.deltas.is_empty(), opts.slow) {
        (false, _) => opts.deltas.clone(),
        (true, false) => vec![4],
        (true, true) => vec![4, 6],
    };
    let mut out = Vec::new();
    for delta in deltas {
        let Ok((lo, hi)) = solver::gdelta_bounds(delta) else {
            out.push(skipped(format!("G{delta}"), GDELTA, "Δ must be even and at least 4"));
            continue;
        };
        if delta > 4 && !opts.slow {
            out.push(skipped(format!("G{delta}"), GDELTA, "needs --slow"));
            continue;
        }
        let u = g_delta(delta).unwrap();
        let split = match palette_index_union(&u.graph, &opts.cfg) {
            Ok(r) => r,
            Err(e) => {
                out.push(check(format!("G{delta}"), GDELTA, false, e.to_string()));
                continue;
            }
        };
        for (part, &v) in u.parts.iter().zip(&split.part_values) {
            out.push(if split.result.exact {
                check(format!("H{delta}_{}", part.t), HLOWER, v > delta / 2 + 1, format!("š = {v}"))
            } else {
                skipped(format!("H{delta}_{}", part.t), HLOWER, format!("bounded: š ≤ {v}"))
            });
        }
        let value = split.result.value;
        if split.path != UnionPath::Decomposition || !split.result.exact {
            out.push(skipped(format!("G{delta}"), GDELTA, format!("decomposition not exact, š ≤ {value}")));
            continue;
        }
        let mut detail = format!("š = {value} by decomposition, bounds ({lo}, {hi})");
        let mut ok = lo < value && value < hi;
        if delta == 4 {
            let whole = palette_index(&u.graph, &opts.cfg).unwrap();
            if !whole.exact {
                out.push(skipped(format!("G{delta}-direct"), GDELTA, "whole-graph search out of budget"));
            } else {
                ok &= whole.value == value;
                detail.push_str(&format!(", {} by whole-graph search", whole.value));
            }
        }
        out.push(check(format!("G{delta}"), GDELTA, ok, detail));
    }
    out
}

const KN: &str = "š(K_n): 1 for even n, 3 for n ≡ 3, 4 for n ≡ 1 (mod 4)";

pub fn expected_kn(n: usize) -> usize {
    match n % 4 {
        0 | 2 => 1,
        3 => 3,
        _ => 4,
    }
}

pub fn kn_table(opts: &Options) -> Vec<Check> {
    let n_max = opts.n_max.unwrap_or(7);
    (3..=n_max)
        .map(|n| {
            let r = palette_index(&complete(n).unwrap(), &opts.cfg).unwrap();
            let name = format!("K{n}");
            if r.exact {
                check(name, KN, r.value == expected_kn(n), format!("š = {} exact, expected {}", r.value, expected_kn(n)))
            } else {
                skipped(name, KN, format!("bounded: {} ≤ š ≤ {}", r.lower_bound, r.value))
            }
        })
        .collect()
}

const MATRIX: &str = "matrix colorings of K_{5,6}";

pub fn matrices() -> Vec<Check> {
    [("M56", M56, 12, 6), ("M56'", M56_PRIME, 8, 6)]
        .into_iter()
        .map(|(name, text, colors, palettes)| match parse_color_matrix(text) {
            Ok((g, c)) => {
                let got = (c.used_count(), c.palette_count(&g).unwrap());
                check(
                    name,
                    MATRIX,
                    c.is_proper(&g).unwrap() && got == (colors, palettes),
                    format!("proper, {} colors, {} palettes", got.0, got.1),
                )
            }
            Err(e) => check(name, MATRIX, false, e.to_string()),
        })
        .collect()
}

const CONJECTURE: &str = "χ'_š ≤ ⌈3Δ/2⌉ for simple graphs";

fn conjecture_corpus(opts: &Options) -> Vec<NamedGraph> {
    let mut corpus = random_simple_graphs(opts.corpus.unwrap_or(200), opts.n_max.unwrap_or(8), opts.seed);
    corpus.extend(named_graphs().into_iter().filter(|g| g.graph.is_simple()));
    corpus
}

/// Searches the corpus for a counterexample; a hit fails and dumps the graph and witness.
pub fn conjecture(opts: &Options) -> Vec<Check> {
    let corpus = conjecture_corpus(opts);
    let mut out = Vec::new();
    let mut checked = 0;
    let mut skips = 0;
    for NamedGraph { name, graph } in &corpus {
        let bound = (3 * graph.max_degree()).div_ceil(2) as u32;
        match chi_prime_s(graph, &opts.cfg) {
            Ok(r) => {
                checked += 1;
                if r.k > bound {
                    out.push(check(
                        name.clone(),
                        CONJECTURE,
                        false,
                        format!(
                            "counterexample: χ'_š = {} > {bound}\n{}{}",
                            r.k,
                            serialize_multigraph(graph),
                            serialize_coloring(&r.witness)
                        ),
                    ));
                }
            }
            Err(Error::Inexact) => {
                skips += 1;
                out.push(skipped(name.clone(), CONJECTURE, "palette index not settled within budget"));
            }
            Err(e) => out.push(check(name.clone(), CONJECTURE, false, e.to_string())),
        }
    }
    let found = out.iter().any(|c| c.status == Status::Fail);
    let summary = if found { "counterexample found" } else { "no counterexample found" };
    out.push(check("summary", CONJECTURE, !found, format!("{summary}: {checked} graphs settled, {skips} skipped")));
    out
}

const INTERVAL: &str = "š ≤ Δ² - Δ + 1 for interval-colorable graphs";

pub fn interval_bound(opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    let c5 = palette_core::families::cycle(5).unwrap();
    let certified = search_interval_coloring(&c5, &SearchConfig::default());
    out.push(check(
        "C5-no-interval",
        INTERVAL,
        matches!(certified, Ok(IntervalSearch::None)),
        "exhaustive search for t = 2..=5",
    ));
    let mut holds = 0;
    let mut not_applicable = 0;
    let mut unknown = 0;
    let mut corpus = random_simple_graphs(opts.corpus.unwrap_or(200), opts.n_max.unwrap_or(8), opts.seed);
    corpus.extend(named_graphs());
    for NamedGraph { name, graph } in &corpus {
        match check_interval_bound(graph, &opts.cfg) {
            Ok(r) => match r.status {
                BoundStatus::Holds => holds += 1,
                BoundStatus::NotApplicable => not_applicable += 1,
                BoundStatus::Unknown => {
                    unknown += 1;
                    out.push(skipped(name.clone(), INTERVAL, "interval colorability or š not settled"));
                }
                BoundStatus::Violated => out.push(check(
                    name.clone(),
                    INTERVAL,
                    false,
                    format!("š = {:?} > {}", r.palette_index, r.bound),
                )),
            },
            Err(e) => out.push(check(name.clone(), INTERVAL, false, e.to_string())),
        }
    }
    let violated = out.iter().any(|c| c.status == Status::Fail);
    out.push(check(
        "corpus",
        INTERVAL,
        !violated,
        format!("{holds} hold, {not_applicable} without interval coloring, {unknown} unsettled"),
    ));
    out
}

const FOREST_CHI: &str = "χ'_š = Δ for forests";

pub fn forests(opts: &Options) -> Vec<Check> {
    let count = opts.samples.unwrap_or(50);
    let n_max = opts.n_max.unwrap_or(12).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = Vec::new();
    let mut skips = 0;
    for i in 0..count {
        let n = rng.gen_range(2..=n_max);
        let tree = random_tree(n, rng.gen()).unwrap();
        match chi_prime_s(&tree, &opts.cfg) {
            Ok(r) if r.k as usize == tree.max_degree() => {}
            Ok(r) => bad.push(format!("tree {i}: χ'_š = {} but Δ = {}", r.k, tree.max_degree())),
            Err(Error::Inexact) => skips += 1,
            Err(e) => bad.push(format!("tree {i}: {e}")),
        }
    }
    let mut out = vec![check(
        "trees",
        FOREST_CHI,
        bad.is_empty(),
        format!("{} of {count} trees match {}", count - bad.len() - skips, bad.join("; ")),
    )];
    if skips > 0 {
        out.push(skipped("trees-unsettled", FOREST_CHI, format!("{skips} trees out of budget")));
    }
    out
}
