//! Backtracking search over proper edge colorings.
//!
//! The unknowns are edge classes: all parallel copies between one vertex pair
//! receive a set of distinct colors at once, which removes the permutations of
//! colors among copies. Unused colors are interchangeable, so a class may only
//! take colors already in use plus the next unused ones in order.
//!
//! With a palette budget `p`, a node is cut when the completed palettes plus a
//! lower bound on palettes still to be opened exceeds `p`. Once the budget is
//! fully committed, each unfinished vertex must end on one of the completed
//! palettes it still fits into. That restricts edge domains, and it also bounds
//! how many vertices can carry each color: every color class is a matching, so
//! that number is even, and it is balanced across the sides of a bipartite graph.
//!
//! The next class to branch on is the one with the fewest spare colors,
//! preferring classes that touch a vertex close to completion.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use web_time::Instant;

use crate::multigraph::{EdgeId, Multigraph, VertexId};

pub(crate) type Mask = u128;
const CLOCK_EVERY: u64 = 1 << 12;
/// Slack charged to a class that may still open fresh colors.
const OPEN_SLACK: i64 = 1 << 20;

#[derive(Debug, Clone)]
struct Class {
    u: VertexId,
    v: VertexId,
    edges: Vec<EdgeId>,
}

/// A single feasibility question: is there a proper coloring with colors
/// from `0..max_colors` and at most `max_palettes` distinct palettes?
pub(crate) struct Problem<'g> {
    g: &'g Multigraph,
    classes: Vec<Class>,
    /// Classes incident to each vertex.
    classes_at: Vec<Vec<usize>>,
    max_colors: u32,
    max_palettes: Option<usize>,
    symmetry_breaking: bool,
    degree: Vec<usize>,
    /// Vertices grouped by degree, largest first.
    by_degree: Vec<(usize, Vec<VertexId>)>,
    class_of: Vec<usize>,
    /// A proper 2-coloring of the vertices when the graph is bipartite.
    side: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

pub(crate) struct Limits<'a> {
    pub deadline: Option<Instant>,
    pub jobs: usize,
    pub nodes: &'a AtomicU64,
}

fn two_coloring(g: &Multigraph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.vertex_count()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(true);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let sx = side[x].unwrap();
            for &e in g.incident_edges(x) {
                let y = g.opposite(e, x);
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        stack.push(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros();
            m &= m - 1;
            b
        })
    })
}

/// All subsets of `pool` with exactly `size` elements, smallest colors first.
pub(crate) fn subsets(pool: Mask, size: usize, out: &mut Vec<Mask>) {
    fn go(items: &[u32], size: usize, start: usize, acc: Mask, out: &mut Vec<Mask>) {
        if size == 0 {
            out.push(acc);
            return;
        }
        for i in start..=items.len() - size {
            go(items, size - 1, i + 1, acc | 1 << items[i], out);
        }
    }
    let items: Vec<u32> = bits(pool).collect();
    if items.len() >= size {
        go(&items, size, 0, 0, out);
    }
}

/// Mask of colors `lo..hi`.
pub(crate) fn range_mask(lo: u32, hi: u32) -> Mask {
    if lo >= hi {
        return 0;
    }
    let upto = |n: u32| if n >= Mask::BITS { Mask::MAX } else { (1 << n) - 1 };
    upto(hi) & !upto(lo)
}

impl<'g> Problem<'g> {
    pub fn new(g: &'g Multigraph, max_colors: u32, max_palettes: Option<usize>, symmetry_breaking: bool) -> Self {
        let mut classes: Vec<Class> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let i = *index.entry((u, v)).or_insert_with(|| {
                classes.push(Class { u, v, edges: Vec::new() });
                classes.len() - 1
            });
            classes[i].edges.push(e);
        }
        let mut classes_at = vec![Vec::new(); g.vertex_count()];
        for (i, c) in classes.iter().enumerate() {
            classes_at[c.u].push(i);
            classes_at[c.v].push(i);
        }
        let degree = g.degrees();
        let mut by_degree: Vec<(usize, Vec<VertexId>)> = Vec::new();
        for v in g.vertices() {
            match by_degree.iter_mut().find(|(d, _)| *d == degree[v]) {
                Some((_, vs)) => vs.push(v),
                None => by_degree.push((degree[v], vec![v])),
            }
        }
        by_degree.sort_by_key(|(d, _)| std::cmp::Reverse(*d));
        let mut class_of = vec![0; g.vertex_count()];
        for (i, (_, vs)) in by_degree.iter().enumerate() {
            for &v in vs {
                class_of[v] = i;
            }
        }
        Problem {
            g,
            classes,
            classes_at,
            max_colors: max_colors.min(Mask::BITS),
            max_palettes,
            symmetry_breaking,
            degree,
            by_degree,
            class_of,
            side: two_coloring(g),
        }
    }

    /// Runs the search, splitting the top of the tree across `limits.jobs`
    /// workers. A found coloring is indexed by edge id.
    pub fn solve(&self, limits: &Limits<'_>) -> Outcome {
        if self.max_palettes == Some(0) && self.g.vertex_count() > 0 {
            return Outcome::Exhausted;
        }
        if self.counting_bound_fails() {
            return Outcome::Exhausted;
        }
        let mut root = State::new(self);
        if !root.feasible(self) {
            return Outcome::Exhausted;
        }
        if limits.jobs <= 1 || self.classes.len() < 4 {
            let mut run = Run::new(limits, None);
            return match root.dfs(self, &mut run) {
                true => Outcome::Found(root.edge_colors(self)),
                false if run.aborted => Outcome::Aborted,
                false => Outcome::Exhausted,
            };
        }
        self.solve_parallel(root, limits)
    }

    fn solve_parallel(&self, root: State, limits: &Limits<'_>) -> Outcome {
        // Widen the frontier breadth-first until there is enough work to share.
        let target = 8 * limits.jobs;
        let mut frontier: Vec<Vec<(usize, Mask)>> = vec![Vec::new()];
        let mut scratch = Vec::new();
        while frontier.len() < target {
            let mut next = Vec::new();
            let mut complete = None;
            for prefix in &frontier {
                let mut st = root.clone();
                st.replay(self, prefix);
                let Some(class) = st.select(self) else {
                    complete = Some(prefix.clone());
                    break;
                };
                st.values(self, class, &mut scratch);
                for &set in &scratch {
                    if st.assign(self, class, set) {
                        let mut child = prefix.clone();
                        child.push((class, set));
                        next.push(child);
                    }
                    st.unassign(self, class);
                }
            }
            if let Some(prefix) = complete {
                let mut st = root.clone();
                st.replay(self, &prefix);
                return Outcome::Found(st.edge_colors(self));
            }
            if next.is_empty() {
                return Outcome::Exhausted;
            }
            frontier = next;
        }
        let stop = AtomicBool::new(false);
        let aborted = AtomicBool::new(false);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .expect("thread pool");
        let found = pool.install(|| {
            frontier.par_iter().find_map_any(|prefix| {
                if stop.load(Ordering::Relaxed) {
                    return None;
                }
                let mut st = root.clone();
                st.replay(self, prefix);
                let mut run = Run::new(limits, Some(&stop));
                if st.dfs(self, &mut run) {
                    stop.store(true, Ordering::Relaxed);
                    return Some(st.edge_colors(self));
                }
                if run.aborted && !run.cancelled {
                    aborted.store(true, Ordering::Relaxed);
                }
                None
            })
        });
        match found {
            Some(colors) => Outcome::Found(colors),
            None if aborted.load(Ordering::Relaxed) => Outcome::Aborted,
            None => Outcome::Exhausted,
        }
    }

    /// Every color class is a matching, so a component with `m` edges on
    /// `n` vertices needs at least `m / ⌊n/2⌋` colors.
    fn counting_bound_fails(&self) -> bool {
        let comp = self.g.components();
        let count = comp.iter().max().map_or(0, |c| c + 1);
        let mut verts = vec![0u64; count];
        let mut edges = vec![0u64; count];
        for &c in &comp {
            verts[c] += 1;
        }
        for &(u, _) in self.g.edges() {
            edges[comp[u]] += 1;
        }
        (0..count).any(|c| edges[c] > u64::from(self.max_colors) * (verts[c] / 2))
    }
}

struct Run<'a> {
    deadline: Option<Instant>,
    nodes: &'a AtomicU64,
    local: u64,
    stop: Option<&'a AtomicBool>,
    aborted: bool,
    cancelled: bool,
}

impl<'a> Run<'a> {
    fn new(limits: &Limits<'a>, stop: Option<&'a AtomicBool>) -> Self {
        Run {
            deadline: limits.deadline,
            nodes: limits.nodes,
            local: 0,
            stop,
            aborted: false,
            cancelled: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local.is_multiple_of(CLOCK_EVERY) {
            self.nodes.fetch_add(CLOCK_EVERY, Ordering::Relaxed);
            if self.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
                self.aborted = true;
                self.cancelled = true;
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.aborted = true;
            }
        }
        !self.aborted
    }
}

impl Drop for Run<'_> {
    fn drop(&mut self) {
        self.nodes.fetch_add(self.local % CLOCK_EVERY, Ordering::Relaxed);
    }
}

#[derive(Clone)]
struct State {
    /// Color set per class, 0 while unassigned.
    set: Vec<Mask>,
    unassigned: usize,
    mask: Vec<Mask>,
    remaining: Vec<usize>,
    /// Completed distinct palettes with their vertex counts.
    palettes: Vec<(Mask, u32)>,
    /// Colors introduced so far, one entry per assignment depth.
    introduced: Vec<u32>,
    /// Whether the last feasibility check left the palette budget fully committed.
    saturated: bool,
    /// Scratch for `feasible`: colors each vertex may still end with, and colors it must end with.
    allowed: Vec<Mask>,
    forced: Vec<Mask>,
    class_opens: Vec<bool>,
}

impl State {
    fn new(pb: &Problem<'_>) -> Self {
        let g = pb.g;
        let mut st = State {
            set: vec![0; pb.classes.len()],
            unassigned: pb.classes.len(),
            mask: vec![0; g.vertex_count()],
            remaining: pb.degree.clone(),
            palettes: Vec::new(),
            introduced: vec![0],
            saturated: false,
            allowed: vec![Mask::MAX; g.vertex_count()],
            forced: vec![0; g.vertex_count()],
            class_opens: vec![true; pb.by_degree.len()],
        };
        let isolated = g.vertices().filter(|&v| pb.degree[v] == 0).count() as u32;
        if isolated > 0 {
            st.palettes.push((0, isolated));
        }
        st
    }

    fn replay(&mut self, pb: &Problem<'_>, prefix: &[(usize, Mask)]) {
        for &(class, set) in prefix {
            let ok = self.assign(pb, class, set);
            debug_assert!(ok);
        }
    }

    fn edge_colors(&self, pb: &Problem<'_>) -> Vec<u32> {
        let mut colors = vec![0; pb.g.edge_count()];
        for (class, &set) in pb.classes.iter().zip(&self.set) {
            for (&e, c) in class.edges.iter().zip(bits(set)) {
                colors[e] = c;
            }
        }
        colors
    }

    fn colors_in_use(&self) -> u32 {
        *self.introduced.last().unwrap()
    }

    /// Old colors a class may take, and whether fresh colors are admissible at both ends.
    fn domain(&self, pb: &Problem<'_>, class: usize) -> (Mask, bool) {
        let Class { u, v, .. } = pb.classes[class];
        let in_use = if pb.symmetry_breaking {
            range_mask(0, self.colors_in_use())
        } else {
            range_mask(0, pb.max_colors)
        };
        let mut old = in_use & !self.mask[u] & !self.mask[v];
        let mut fresh = pb.symmetry_breaking && self.colors_in_use() < pb.max_colors;
        if self.saturated {
            old &= self.allowed[u] & self.allowed[v];
            fresh &= self.allowed[u] == Mask::MAX && self.allowed[v] == Mask::MAX;
        }
        (old, fresh)
    }

    /// Unassigned class with the least slack, or `None` when all are colored.
    fn select(&self, pb: &Problem<'_>) -> Option<usize> {
        let mut best: Option<(i64, bool, usize, std::cmp::Reverse<usize>, usize)> = None;
        for (i, class) in pb.classes.iter().enumerate() {
            if self.set[i] != 0 {
                continue;
            }
            let (old, fresh) = self.domain(pb, i);
            let need = class.edges.len() as i64;
            let slack = old.count_ones() as i64 + if fresh { OPEN_SLACK } else { 0 } - need;
            let (u, v) = (class.u, class.v);
            let untouched = self.remaining[u] == pb.degree[u] && self.remaining[v] == pb.degree[v];
            let key = (
                slack,
                untouched,
                self.remaining[u].min(self.remaining[v]),
                std::cmp::Reverse(pb.degree[u] + pb.degree[v]),
                i,
            );
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.map(|b| b.4)
    }

    /// Candidate color sets for `class`: as many old colors as possible first.
    fn values(&self, pb: &Problem<'_>, class: usize, out: &mut Vec<Mask>) {
        out.clear();
        let need = pb.classes[class].edges.len();
        let (old, fresh) = self.domain(pb, class);
        let next = self.colors_in_use();
        let spare = if fresh { (pb.max_colors - next) as usize } else { 0 };
        for new in 0..=need.min(spare) {
            let tail = range_mask(next, next + new as u32);
            let start = out.len();
            subsets(old, need - new, out);
            for s in &mut out[start..] {
                *s |= tail;
            }
        }
    }

    /// Colors `class` with `set`; returns false if the node is pruned.
    /// Always pair with [`State::unassign`].
    fn assign(&mut self, pb: &Problem<'_>, class: usize, set: Mask) -> bool {
        let Class { u, v, ref edges } = pb.classes[class];
        self.set[class] = set;
        self.unassigned -= 1;
        let top = Mask::BITS - set.leading_zeros();
        self.introduced.push(self.colors_in_use().max(top));
        for w in [u, v] {
            self.mask[w] |= set;
            self.remaining[w] -= edges.len();
            if self.remaining[w] == 0 {
                self.add_palette(self.mask[w]);
            }
        }
        self.feasible(pb)
    }

    fn unassign(&mut self, pb: &Problem<'_>, class: usize) {
        let Class { u, v, ref edges } = pb.classes[class];
        let set = self.set[class];
        for w in [v, u] {
            if self.remaining[w] == 0 {
                self.remove_palette(self.mask[w]);
            }
            self.remaining[w] += edges.len();
            self.mask[w] &= !set;
        }
        self.introduced.pop();
        self.set[class] = 0;
        self.unassigned += 1;
    }

    fn add_palette(&mut self, m: Mask) {
        match self.palettes.iter_mut().find(|(p, _)| *p == m) {
            Some((_, count)) => *count += 1,
            None => self.palettes.push((m, 1)),
        }
    }

    fn remove_palette(&mut self, m: Mask) {
        let i = self
            .palettes
            .iter()
            .rposition(|&(p, _)| p == m)
            .expect("completed palette is recorded");
        self.palettes[i].1 -= 1;
        if self.palettes[i].1 == 0 {
            self.palettes.remove(i);
        }
    }

    /// Completed palettes plus palettes that must still be opened fit the
    /// budget; when the budget is fully committed, also checks domains and
    /// color-count parity.
    fn feasible(&mut self, pb: &Problem<'_>) -> bool {
        self.saturated = false;
        let Some(p) = pb.max_palettes else {
            return true;
        };
        let mut total = self.palettes.len();
        if total > p {
            return false;
        }
        let mut reps: Vec<Mask> = Vec::new();
        for (class, (d, verts)) in pb.by_degree.iter().enumerate() {
            let d = *d as u32;
            reps.clear();
            for &w in verts {
                if self.remaining[w] == 0 {
                    continue;
                }
                let (fits, common) = self.fitting_palettes(pb, w, d);
                self.allowed[w] = fits;
                self.forced[w] = common;
                if fits != 0 {
                    continue;
                }
                let m = self.mask[w];
                if reps.iter().all(|&r| (r | m).count_ones() > d) {
                    reps.push(m);
                    total += 1;
                    if total > p {
                        return false;
                    }
                }
            }
            self.class_opens[class] = !reps.is_empty();
        }
        if total < p {
            return true;
        }
        for w in pb.g.vertices() {
            if self.remaining[w] == 0 {
                self.allowed[w] = self.mask[w];
                self.forced[w] = self.mask[w];
            } else if self.class_opens[pb.class_of[w]] {
                self.allowed[w] = Mask::MAX;
                self.forced[w] = self.mask[w];
            } else if ((self.allowed[w] & !self.mask[w]).count_ones() as usize) < self.remaining[w] {
                return false;
            }
        }
        self.saturated = true;
        self.matching_counts_ok(pb)
    }

    /// Union and intersection of the completed palettes of size `d` that `w`
    /// can still grow into; `(0, _)` when there are none.
    fn fitting_palettes(&self, pb: &Problem<'_>, w: VertexId, d: u32) -> (Mask, Mask) {
        let m = self.mask[w];
        let mut union = 0;
        let mut common = Mask::MAX;
        for &(pal, _) in &self.palettes {
            if pal.count_ones() != d || m & !pal != 0 {
                continue;
            }
            let free = pal & !m;
            let reachable = pb.classes_at[w].iter().all(|&c| {
                if self.set[c] != 0 {
                    return true;
                }
                let Class { u, v, ref edges } = pb.classes[c];
                let x = if u == w { v } else { u };
                (free & !self.mask[x]).count_ones() as usize >= edges.len()
            });
            if reachable {
                union |= pal;
                common &= pal;
            }
        }
        (union, common)
    }

    /// Each color class is a matching: the vertices holding a color pair up,
    /// so their number is even, and on a bipartite graph both sides hold it
    /// equally often. `forced` and `allowed` bound each vertex's final palette.
    fn matching_counts_ok(&self, pb: &Problem<'_>) -> bool {
        let mut parity: Mask = 0;
        let mut flexible: Mask = 0;
        for w in pb.g.vertices() {
            parity ^= self.forced[w];
            flexible |= self.allowed[w] & !self.forced[w];
        }
        if parity & !flexible != 0 {
            return false;
        }
        let Some(side) = &pb.side else {
            return true;
        };
        for c in 0..self.colors_in_use() {
            let bit: Mask = 1 << c;
            let (mut diff, mut flex_a, mut flex_b) = (0i32, 0i32, 0i32);
            for w in pb.g.vertices() {
                let a = side[w];
                if self.forced[w] & bit != 0 {
                    diff += if a { 1 } else { -1 };
                } else if self.allowed[w] & bit != 0 {
                    if a {
                        flex_a += 1;
                    } else {
                        flex_b += 1;
                    }
                }
            }
            // diff + taken_a - taken_b must reach 0
            if diff > flex_b || -diff > flex_a {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, pb: &Problem<'_>, run: &mut Run<'_>) -> bool {
        let Some(class) = self.select(pb) else {
            return true;
        };
        if !run.tick() {
            return false;
        }
        let mut values = Vec::new();
        self.values(pb, class, &mut values);
        for set in values {
            if self.assign(pb, class, set) && self.dfs(pb, run) {
                return true;
            }
            self.unassign(pb, class);
            if run.aborted {
                return false;
            }
        }
        false
    }
}
