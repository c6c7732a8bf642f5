//! Exact chromatic index, palette index and minimum-color search.

mod bounds;
pub(crate) mod search;
mod union;

use std::sync::atomic::AtomicU64;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::coloring::{greedy_coloring, EdgeColoring};
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use search::{Limits, Outcome, Problem};

pub use bounds::{degree_diversity_lower_bound, gdelta_bounds, interval_palette_bound, trivial_palette_upper_bound};
pub use union::{palette_index_union, UnionPath, UnionResult};

/// Colors are tracked in 128-bit masks.
pub const MAX_COLORS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Upper limit on the color universe; `None` means `|E(G)|`.
    pub max_colors: Option<u32>,
    pub time_budget: Option<Duration>,
    pub symmetry_breaking: bool,
    /// Worker threads; 1 keeps witnesses deterministic.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_colors: None,
            time_budget: None,
            symmetry_breaking: true,
            jobs: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_max_colors(mut self, k: u32) -> Self {
        self.max_colors = Some(k);
        self
    }

    /// The color cap actually searched for `g`.
    pub fn color_cap(&self, g: &Multigraph) -> u32 {
        let all = (g.edge_count() as u32).max(1);
        self.max_colors.unwrap_or(all).min(all).min(MAX_COLORS)
    }
}

/// Shared clock and node counter for one top-level call.
pub(crate) struct Session {
    deadline: Option<Instant>,
    jobs: usize,
    symmetry_breaking: bool,
    nodes: AtomicU64,
    started: Instant,
}

impl Session {
    pub(crate) fn new(cfg: &SearchConfig) -> Self {
        let started = Instant::now();
        Session {
            deadline: cfg.time_budget.map(|b| started + b),
            jobs: cfg.jobs.max(1),
            symmetry_breaking: cfg.symmetry_breaking,
            nodes: AtomicU64::new(0),
            started,
        }
    }

    fn run(&self, g: &Multigraph, k: u32, palettes: Option<usize>) -> Outcome {
        let pb = Problem::new(g, k, palettes, self.symmetry_breaking);
        pb.solve(&Limits {
            deadline: self.deadline,
            jobs: self.jobs,
            nodes: &self.nodes,
        })
    }

    /// Same question without a deadline; used to recover a witness after a timeout.
    fn run_unbounded(&self, g: &Multigraph, k: u32, palettes: Option<usize>) -> Outcome {
        let pb = Problem::new(g, k, palettes, self.symmetry_breaking);
        pb.solve(&Limits {
            deadline: None,
            jobs: self.jobs,
            nodes: &self.nodes,
        })
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

/// Chromatic index, or an interval when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticIndex {
    pub lower: u32,
    pub upper: u32,
    pub witness: EdgeColoring,
}

impl ChromaticIndex {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<u32> {
        self.is_exact().then_some(self.lower)
    }
}

/// Smallest `k` admitting a proper `k`-edge-coloring, by feasibility search upward from `Δ`.
pub fn chromatic_index(g: &Multigraph, cfg: &SearchConfig) -> Result<ChromaticIndex> {
    chromatic_index_in(g, &Session::new(cfg))
}

fn chromatic_index_in(g: &Multigraph, session: &Session) -> Result<ChromaticIndex> {
    let greedy = greedy_coloring(g).normalized();
    let delta = g.max_degree() as u32;
    // Vizing's multigraph bound Δ + μ caps the climb.
    let vizing = delta + g.max_multiplicity() as u32;
    let ceiling = greedy.k().min(vizing);
    if ceiling > MAX_COLORS {
        return Err(Error::TooManyColors(ceiling));
    }
    for k in delta..ceiling {
        match session.run(g, k, None) {
            Outcome::Found(colors) => {
                let witness = EdgeColoring::new(k, colors)?;
                return Ok(ChromaticIndex { lower: k, upper: k, witness });
            }
            Outcome::Exhausted => continue,
            Outcome::Aborted => {
                return Ok(ChromaticIndex { lower: k, upper: greedy.k(), witness: greedy });
            }
        }
    }
    if greedy.k() == ceiling {
        return Ok(ChromaticIndex { lower: ceiling, upper: ceiling, witness: greedy });
    }
    match session.run_unbounded(g, ceiling, None) {
        Outcome::Found(colors) => {
            let witness = EdgeColoring::new(ceiling, colors)?;
            Ok(ChromaticIndex { lower: ceiling, upper: ceiling, witness })
        }
        _ => unreachable!("a multigraph is always (Δ + μ)-edge-colorable"),
    }
}

/// Minimum palette count over proper colorings with colors from `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPalettes {
    pub k: u32,
    pub count: usize,
    pub witness: EdgeColoring,
    pub exact: bool,
}

pub fn min_palettes_with_k_colors(g: &Multigraph, k: u32, cfg: &SearchConfig) -> Result<MinPalettes> {
    let session = Session::new(cfg);
    if k > MAX_COLORS {
        return Err(Error::TooManyColors(k));
    }
    let chi = chromatic_index_in(g, &session)?;
    if k < chi.lower {
        return Err(Error::BelowChromaticIndex { k, chromatic_index: chi.lower });
    }
    min_palettes_in(g, k, &session)
}

fn min_palettes_in(g: &Multigraph, k: u32, session: &Session) -> Result<MinPalettes> {
    let floor = degree_diversity_lower_bound(g);
    let mut complete = true;
    for p in floor..=g.vertex_count().max(1) {
        match session.run(g, k, Some(p)) {
            Outcome::Found(colors) => {
                let witness = EdgeColoring::new(k, colors)?;
                let count = witness.palette_count(g)?;
                return Ok(MinPalettes { k, count, witness, exact: complete || count == floor });
            }
            Outcome::Exhausted => {}
            Outcome::Aborted => {
                complete = false;
                break;
            }
        }
    }
    if complete {
        return Err(Error::BelowChromaticIndex { k, chromatic_index: k + 1 });
    }
    // Out of time: any proper k-coloring still gives an upper bound.
    match session.run_unbounded(g, k, None) {
        Outcome::Found(colors) => {
            let witness = EdgeColoring::new(k, colors)?;
            let count = witness.palette_count(g)?;
            Ok(MinPalettes { k, count, witness, exact: count == floor })
        }
        _ => Err(Error::BelowChromaticIndex { k, chromatic_index: k + 1 }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteIndexResult {
    pub value: usize,
    pub witness: EdgeColoring,
    pub colors_used: usize,
    /// True only when every proper coloring was provably covered.
    pub exact: bool,
    /// Color budgets covered: from the chromatic index up to the cap.
    pub explored_k: (u32, u32),
    pub lower_bound: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Palette index: the minimum number of distinct palettes over all proper colorings.
///
/// Colors are introduced canonically, so a single search with cap `|E(G)|`
/// covers every coloring; a smaller user cap only yields an exact answer when
/// the degree-diversity lower bound is met.
pub fn palette_index(g: &Multigraph, cfg: &SearchConfig) -> Result<PaletteIndexResult> {
    let session = Session::new(cfg);
    palette_index_in(g, cfg, &session)
}

pub(crate) fn palette_index_in(g: &Multigraph, cfg: &SearchConfig, session: &Session) -> Result<PaletteIndexResult> {
    if let Some(k) = cfg.max_colors {
        if k < g.max_degree() as u32 {
            return Err(Error::BelowChromaticIndex { k, chromatic_index: g.max_degree() as u32 });
        }
    }
    let chi = chromatic_index_in(g, session)?;
    let cap = cfg.color_cap(g).max(chi.upper);
    let best = min_palettes_in(g, cap, session)?;
    let floor = degree_diversity_lower_bound(g);
    let covers_all = cap as usize >= g.edge_count();
    let witness = best.witness.normalized();
    Ok(PaletteIndexResult {
        value: best.count,
        colors_used: witness.k() as usize,
        witness,
        exact: (best.exact && covers_all && chi.is_exact()) || best.count == floor,
        explored_k: (chi.lower, cap),
        lower_bound: floor,
        nodes: session.nodes(),
        elapsed: session.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiPrimeS {
    /// Fewest colors of a coloring attaining the palette index.
    pub k: u32,
    pub palette_index: usize,
    pub witness: EdgeColoring,
    pub chromatic_index: u32,
}

/// Fewest colors needed by a coloring that attains the palette index.
pub fn chi_prime_s(g: &Multigraph, cfg: &SearchConfig) -> Result<ChiPrimeS> {
    let session = Session::new(cfg);
    let pi = palette_index_in(g, cfg, &session)?;
    if !pi.exact {
        return Err(Error::Inexact);
    }
    let chi = pi.explored_k.0;
    for k in chi..pi.colors_used as u32 {
        match session.run(g, k, Some(pi.value)) {
            Outcome::Found(colors) => {
                let witness = EdgeColoring::new(k, colors)?.normalized();
                return Ok(ChiPrimeS { k: witness.k(), palette_index: pi.value, witness, chromatic_index: chi });
            }
            Outcome::Exhausted => {}
            Outcome::Aborted => return Err(Error::Inexact),
        }
    }
    Ok(ChiPrimeS {
        k: pi.colors_used as u32,
        palette_index: pi.value,
        witness: pi.witness,
        chromatic_index: chi,
    })
}
