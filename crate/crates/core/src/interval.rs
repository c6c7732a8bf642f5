//! Interval and cyclic-interval edge colorings.
//!
//! A proper coloring is an interval coloring when all of its colors are used
//! and every palette is a run of consecutive colors. In the cyclic variant a
//! palette may also be the complement of such a run, i.e. an arc of `Z_t`.
//! Checkers renumber the used colors to `0..t` first, so gaps in the color
//! values never count against a coloring.

use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::coloring::{EdgeColoring, Palette};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};
use crate::solver::search::{bits, range_mask, subsets, Mask};
use crate::solver::{chromatic_index, interval_palette_bound, palette_index, SearchConfig, MAX_COLORS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub is_interval: bool,
    pub is_cyclic_interval: bool,
    /// Number of colors used.
    pub t: u32,
    /// A vertex whose palette breaks the strongest property that fails.
    pub offending_vertex: Option<VertexId>,
}

fn is_run(p: &Palette) -> bool {
    match (p.colors().first(), p.colors().last()) {
        (Some(&lo), Some(&hi)) => (hi - lo) as usize + 1 == p.len(),
        _ => true,
    }
}

/// Palette is a run or the complement of a run inside `0..t`.
fn is_arc(p: &Palette, t: u32) -> bool {
    is_run(p) || is_run(&Palette::new((0..t).filter(|&c| !p.contains(c))))
}

fn report(g: &Multigraph, c: &EdgeColoring) -> Result<IntervalReport> {
    let c = c.normalized();
    let palettes = c.palettes(g)?;
    let t = c.k();
    let not_run = palettes.iter().position(|p| !is_run(p));
    let not_arc = palettes.iter().position(|p| !is_arc(p, t));
    Ok(IntervalReport {
        is_interval: not_run.is_none(),
        is_cyclic_interval: not_arc.is_none(),
        t,
        offending_vertex: not_arc.or(not_run),
    })
}

pub fn is_interval_coloring(g: &Multigraph, c: &EdgeColoring) -> Result<IntervalReport> {
    report(g, c)
}

/// Same report as [`is_interval_coloring`]; the cyclic flag is the one of interest.
pub fn is_cyclic_interval_coloring(g: &Multigraph, c: &EdgeColoring) -> Result<IntervalReport> {
    report(g, c)
}

/// Outcome of an interval-coloring search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalSearch {
    Found(EdgeColoring),
    /// Every admissible number of colors was searched exhaustively.
    None,
    /// The budget ran out or the color cap was below `|E(G)|`.
    Unknown,
}

impl IntervalSearch {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            IntervalSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Run,
    Arc,
}

/// Search state for one fixed number of colors `t`.
struct IntervalProblem<'g> {
    g: &'g Multigraph,
    classes: Vec<(VertexId, VertexId, Vec<usize>)>,
    t: u32,
    shape: Shape,
    deadline: Option<Instant>,
}

enum Step {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

impl<'g> IntervalProblem<'g> {
    fn new(g: &'g Multigraph, t: u32, shape: Shape, deadline: Option<Instant>) -> Self {
        let mut classes: Vec<(VertexId, VertexId, Vec<usize>)> = Vec::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            match classes.iter_mut().find(|(a, b, _)| (*a, *b) == (u, v)) {
                Some((_, _, es)) => es.push(e),
                None => classes.push((u, v, vec![e])),
            }
        }
        IntervalProblem { g, classes, t, shape, deadline }
    }

    /// Whether a vertex of degree `d` holding `m` can still finish on a run (or arc) of length `d`.
    fn fits(&self, m: Mask, d: usize) -> bool {
        if m == 0 {
            return true;
        }
        let lo = m.trailing_zeros();
        let hi = Mask::BITS - 1 - m.leading_zeros();
        if ((hi - lo) as usize) < d {
            return true;
        }
        if self.shape == Shape::Run {
            return false;
        }
        // an arc of length d covers m iff some cyclic gap between held colors is at least t - d
        let held: Vec<u32> = bits(m).collect();
        let wrap = held[0] + self.t - held[held.len() - 1] - 1;
        let widest = held
            .windows(2)
            .map(|w| w[1] - w[0] - 1)
            .chain(std::iter::once(wrap))
            .max()
            .unwrap();
        widest as usize >= self.t as usize - d
    }

    fn solve(&self) -> Step {
        let n = self.g.vertex_count();
        let mut mask = vec![0 as Mask; n];
        let mut set = vec![0 as Mask; self.classes.len()];
        let mut ticks = 0u64;
        match self.dfs(&mut mask, &mut set, self.g.edge_count(), &mut ticks) {
            Some(true) => {
                let mut colors = vec![0; self.g.edge_count()];
                for ((_, _, es), &s) in self.classes.iter().zip(&set) {
                    for (&e, c) in es.iter().zip(bits(s)) {
                        colors[e] = c;
                    }
                }
                Step::Found(colors)
            }
            Some(false) => Step::Exhausted,
            None => Step::Aborted,
        }
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of time.
    fn dfs(&self, mask: &mut [Mask], set: &mut [Mask], uncolored: usize, ticks: &mut u64) -> Option<bool> {
        *ticks += 1;
        if ticks.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return None;
        }
        let used = mask.iter().fold(0, |a, &m| a | m);
        let missing = (range_mask(0, self.t) & !used).count_ones() as usize;
        if missing > uncolored {
            return Some(false);
        }
        let first = uncolored == self.g.edge_count();
        // fewest candidate colors first
        let mut pick: Option<(usize, usize, Mask)> = None;
        for (i, (u, v, es)) in self.classes.iter().enumerate() {
            if set[i] != 0 {
                continue;
            }
            let free = range_mask(0, self.t) & !mask[*u] & !mask[*v];
            let dom: Mask = bits(free)
                .filter(|&c| {
                    self.fits(mask[*u] | 1 << c, self.g.degree(*u)) && self.fits(mask[*v] | 1 << c, self.g.degree(*v))
                })
                .fold(0, |a, c| a | 1 << c);
            let size = dom.count_ones() as usize;
            if size < es.len() {
                return Some(false);
            }
            if pick.is_none_or(|(_, s, _)| size - es.len() < s) {
                pick = Some((i, size - es.len(), dom));
            }
        }
        let Some((class, _, dom)) = pick else {
            return Some(missing == 0);
        };
        let (u, v, ref es) = self.classes[class];
        let mut options = Vec::new();
        subsets(dom, es.len(), &mut options);
        for s in options {
            if first {
                let lo = s.trailing_zeros();
                let hi = Mask::BITS - 1 - s.leading_zeros();
                let keep = match self.shape {
                    // reflection c -> t-1-c
                    Shape::Run => lo <= self.t - 1 - hi,
                    // rotation
                    Shape::Arc => lo == 0,
                };
                if !keep {
                    continue;
                }
            }
            if !self.fits(mask[u] | s, self.g.degree(u)) || !self.fits(mask[v] | s, self.g.degree(v)) {
                continue;
            }
            set[class] = s;
            mask[u] |= s;
            mask[v] |= s;
            let r = self.dfs(mask, set, uncolored - es.len(), ticks);
            if r != Some(false) {
                // keep the assignment in place for the caller to read
                return r;
            }
            mask[u] &= !s;
            mask[v] &= !s;
            set[class] = 0;
        }
        Some(false)
    }
}

/// Finds an interval coloring, deciding regular graphs through their chromatic index.
pub fn find_interval_coloring(g: &Multigraph, cfg: &SearchConfig) -> Result<IntervalSearch> {
    if g.edge_count() > 0 && g.is_regular() {
        // Reducing an interval coloring mod Δ gives a proper Δ-coloring, and
        // a proper Δ-coloring of a Δ-regular graph is already an interval one.
        let chi = chromatic_index(g, cfg)?;
        return Ok(match chi.value() {
            Some(k) if k as usize == g.max_degree() => IntervalSearch::Found(chi.witness.normalized()),
            Some(_) => IntervalSearch::None,
            None if chi.lower as usize > g.max_degree() => IntervalSearch::None,
            None => IntervalSearch::Unknown,
        });
    }
    search_interval_coloring(g, cfg)
}

/// Backtracking over `t = Δ, Δ+1, …` up to the color cap; `None` only when every `t ≤ |E(G)|` was exhausted.
pub fn search_interval_coloring(g: &Multigraph, cfg: &SearchConfig) -> Result<IntervalSearch> {
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    if g.edge_count() == 0 {
        return Ok(IntervalSearch::Found(EdgeColoring::from_colors(Vec::new())));
    }
    let cap = cfg.color_cap(g);
    let mut complete = cap as usize >= g.edge_count();
    for t in g.max_degree() as u32..=cap {
        match IntervalProblem::new(g, t, Shape::Run, deadline).solve() {
            Step::Found(colors) => return Ok(IntervalSearch::Found(EdgeColoring::new(t, colors)?)),
            Step::Exhausted => {}
            Step::Aborted => {
                complete = false;
                break;
            }
        }
    }
    Ok(if complete { IntervalSearch::None } else { IntervalSearch::Unknown })
}

/// Searches for a cyclic interval coloring with exactly `t` colors.
pub fn find_cyclic_interval_coloring(g: &Multigraph, t: u32, cfg: &SearchConfig) -> Result<IntervalSearch> {
    if t > MAX_COLORS {
        return Err(Error::TooManyColors(t));
    }
    if g.edge_count() == 0 {
        return Ok(IntervalSearch::Found(EdgeColoring::from_colors(Vec::new())));
    }
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    Ok(match IntervalProblem::new(g, t, Shape::Arc, deadline).solve() {
        Step::Found(colors) => IntervalSearch::Found(EdgeColoring::new(t, colors)?),
        Step::Exhausted => IntervalSearch::None,
        Step::Aborted => IntervalSearch::Unknown,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Holds,
    Violated,
    /// No interval coloring exists, so the bound says nothing.
    NotApplicable,
    /// Interval colorability or the palette index could not be settled.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalBoundReport {
    pub delta: usize,
    /// `Δ² - Δ + 1`.
    pub bound: usize,
    /// Palette index of the graph with its isolated vertices removed.
    pub palette_index: Option<usize>,
    pub interval_colors: Option<u32>,
    /// Isolated vertices dropped before checking.
    pub isolated: usize,
    pub status: BoundStatus,
}

/// Checks `š(G) ≤ Δ² - Δ + 1` on an interval-colorable multigraph.
///
/// The count covers palettes of sizes `1..=Δ` only, so isolated vertices,
/// whose palette is empty, are removed first.
pub fn check_interval_bound(g: &Multigraph, cfg: &SearchConfig) -> Result<IntervalBoundReport> {
    let delta = g.max_degree();
    let bound = interval_palette_bound(delta);
    let keep: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) > 0).collect();
    let isolated = g.vertex_count() - keep.len();
    let g = &g.induced(&keep)?;
    let mut out = IntervalBoundReport {
        delta,
        bound,
        palette_index: None,
        interval_colors: None,
        isolated,
        status: BoundStatus::Unknown,
    };
    match find_interval_coloring(g, cfg)? {
        IntervalSearch::None => {
            out.status = BoundStatus::NotApplicable;
            return Ok(out);
        }
        IntervalSearch::Unknown => return Ok(out),
        IntervalSearch::Found(c) => out.interval_colors = Some(c.k()),
    }
    let pi = palette_index(g, cfg)?;
    if !pi.exact {
        return Ok(out);
    }
    out.palette_index = Some(pi.value);
    out.status = if pi.value <= bound { BoundStatus::Holds } else { BoundStatus::Violated };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, star};

    fn proper_colorings(g: &Multigraph, k: u32) -> Vec<EdgeColoring> {
        // brute force over k^|E|
        let m = g.edge_count();
        let mut out = Vec::new();
        let mut colors = vec![0u32; m];
        loop {
            let c = EdgeColoring::new(k, colors.clone()).unwrap();
            if c.is_proper(g).unwrap() {
                out.push(c);
            }
            let mut i = 0;
            while i < m && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                return out;
            }
            colors[i] += 1;
        }
    }

    #[test]
    fn path_and_star_are_interval() {
        let p3 = path(3).unwrap();
        let r = is_interval_coloring(&p3, &EdgeColoring::from_colors(vec![0, 1])).unwrap();
        assert!(r.is_interval && r.is_cyclic_interval);
        assert_eq!(r.t, 2);
        let s = star(3).unwrap();
        assert!(is_interval_coloring(&s, &EdgeColoring::from_colors(vec![0, 1, 2])).unwrap().is_interval);
    }

    #[test]
    fn gaps_are_renumbered() {
        let p3 = path(3).unwrap();
        let c = EdgeColoring::new(10, vec![3, 7]).unwrap();
        assert!(is_interval_coloring(&p3, &c).unwrap().is_interval);
    }

    #[test]
    fn c5_three_colorings_are_cyclic_but_not_interval() {
        let c5 = cycle(5).unwrap();
        let all = proper_colorings(&c5, 3);
        let full: Vec<_> = all.iter().filter(|c| c.used_count() == 3).collect();
        assert!(!full.is_empty());
        for c in full {
            let r = is_cyclic_interval_coloring(&c5, c).unwrap();
            assert!(!r.is_interval);
            assert!(r.is_cyclic_interval);
            let v = r.offending_vertex.unwrap();
            let pal = c.palette_of(&c5, v).unwrap();
            assert_eq!(pal, Palette::new([0, 2]));
        }
    }

    #[test]
    fn non_arc_palette() {
        // star with 3 leaves colored 0,2,4 plus two pendant edges supplying colors 1 and 3
        let g = Multigraph::build(6, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1)]).unwrap();
        let c = EdgeColoring::from_colors(vec![0, 2, 4, 1, 3]);
        let r = is_cyclic_interval_coloring(&g, &c).unwrap();
        assert_eq!(r.t, 5);
        assert!(!r.is_cyclic_interval && !r.is_interval);
        assert_eq!(r.offending_vertex, Some(0));
    }

    #[test]
    fn improper_rejected() {
        let p3 = path(3).unwrap();
        assert!(is_interval_coloring(&p3, &EdgeColoring::from_colors(vec![0, 0])).is_err());
    }

    #[test]
    fn finds_k4_with_three_colors() {
        let k4 = complete(4).unwrap();
        let found = find_interval_coloring(&k4, &SearchConfig::default()).unwrap();
        let c = found.coloring().unwrap();
        assert_eq!(c.k(), 3);
        assert!(is_interval_coloring(&k4, c).unwrap().is_interval);
    }

    #[test]
    fn c5_has_no_interval_coloring() {
        let c5 = cycle(5).unwrap();
        assert_eq!(search_interval_coloring(&c5, &SearchConfig::default()).unwrap(), IntervalSearch::None);
        assert_eq!(find_interval_coloring(&c5, &SearchConfig::default()).unwrap(), IntervalSearch::None);
        // and the brute force agrees for every t ≤ |E|
        for k in 2..=5 {
            assert!(proper_colorings(&c5, k)
                .iter()
                .all(|c| !is_interval_coloring(&c5, c).unwrap().is_interval));
        }
        // a capped search cannot certify nonexistence
        let capped = SearchConfig::default().with_max_colors(3);
        assert_eq!(search_interval_coloring(&c5, &capped).unwrap(), IntervalSearch::Unknown);
    }

    #[test]
    fn regular_graphs_follow_class() {
        let cfg = SearchConfig::default();
        assert_eq!(find_interval_coloring(&complete(7).unwrap(), &cfg).unwrap(), IntervalSearch::None);
        assert_eq!(find_interval_coloring(&complete(3).unwrap(), &cfg).unwrap(), IntervalSearch::None);
        let k6 = complete(6).unwrap();
        let found = find_interval_coloring(&k6, &cfg).unwrap();
        let r = is_interval_coloring(&k6, found.coloring().unwrap()).unwrap();
        assert!(r.is_interval);
        assert_eq!(r.t, 5);
    }

    #[test]
    fn c5_cyclic_with_three_colors() {
        let c5 = cycle(5).unwrap();
        let found = find_cyclic_interval_coloring(&c5, 3, &SearchConfig::default()).unwrap();
        let c = found.coloring().unwrap();
        assert!(is_cyclic_interval_coloring(&c5, c).unwrap().is_cyclic_interval);
        assert_eq!(find_cyclic_interval_coloring(&c5, 2, &SearchConfig::default()).unwrap(), IntervalSearch::None);
    }

    #[test]
    fn bound_for_k4() {
        let r = check_interval_bound(&complete(4).unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!(r.bound, 7);
        assert_eq!(r.palette_index, Some(1));
        assert_eq!(r.status, BoundStatus::Holds);
        let c5 = check_interval_bound(&cycle(5).unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!(c5.status, BoundStatus::NotApplicable);
    }

    #[test]
    fn isolated_vertices_are_dropped() {
        // an edge plus an isolated vertex has two palettes, one of them empty
        let g = Multigraph::build(3, [(0, 1, 1)]).unwrap();
        let r = check_interval_bound(&g, &SearchConfig::default()).unwrap();
        assert_eq!((r.isolated, r.palette_index, r.bound), (1, Some(1), 1));
        assert_eq!(r.status, BoundStatus::Holds);
    }
}
