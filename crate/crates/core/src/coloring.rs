//! Edge colorings, properness, palettes and color relabeling.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

pub type Color = u32;

/// Total assignment of a color in `0..k` to every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    k: u32,
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(k: u32, colors: Vec<Color>) -> Result<Self> {
        if let Some((edge, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::ColorOutOfRange { edge, color, k });
        }
        Ok(EdgeColoring { k, colors })
    }

    /// Universe sized to the largest color present.
    pub fn from_colors(colors: Vec<Color>) -> Self {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        EdgeColoring { k, colors }
    }

    /// Builds a coloring from a possibly partial assignment, listing the gaps on failure.
    pub fn from_partial(k: u32, partial: &[Option<Color>]) -> Result<Self> {
        let missing: Vec<EdgeId> = partial
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(e, _)| e)
            .collect();
        if !missing.is_empty() {
            return Err(Error::Uncolored(missing));
        }
        Self::new(k, partial.iter().map(|c| c.unwrap()).collect())
    }

    /// Declared universe size.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn used_colors(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn used_count(&self) -> usize {
        self.used_colors().len()
    }

    /// Applies `perm[c]` to every color. `perm` must be a bijection on `0..k`.
    pub fn relabel(&self, perm: &[Color]) -> Result<EdgeColoring> {
        let mut seen = vec![false; self.k as usize];
        if perm.len() != self.k as usize {
            return Err(Error::NotAPermutation(self.k));
        }
        for &p in perm {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::NotAPermutation(self.k)),
            }
        }
        Ok(EdgeColoring {
            k: self.k,
            colors: self.colors.iter().map(|&c| perm[c as usize]).collect(),
        })
    }

    /// Drops unused colors, renumbering the used ones consecutively in increasing order.
    pub fn normalized(&self) -> EdgeColoring {
        let used: Vec<Color> = self.used_colors().into_iter().collect();
        let mut map = vec![0; self.k as usize];
        for (i, &c) in used.iter().enumerate() {
            map[c as usize] = i as Color;
        }
        EdgeColoring {
            k: used.len() as u32,
            colors: self.colors.iter().map(|&c| map[c as usize]).collect(),
        }
    }

    fn check_len(&self, g: &Multigraph) -> Result<()> {
        if self.colors.len() < g.edge_count() {
            return Err(Error::Uncolored((self.colors.len()..g.edge_count()).collect()));
        }
        if self.colors.len() != g.edge_count() {
            return Err(Error::ColoringLength {
                expected: g.edge_count(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }

    /// First conflict found, as `(e, f, shared vertex, color)`.
    pub fn conflict(&self, g: &Multigraph) -> Result<Option<(EdgeId, EdgeId, VertexId, Color)>> {
        self.check_len(g)?;
        for v in g.vertices() {
            let inc = g.incident_edges(v);
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    if self.colors[e] == self.colors[f] {
                        return Ok(Some((e, f, v, self.colors[e])));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_proper(&self, g: &Multigraph) -> Result<bool> {
        Ok(self.conflict(g)?.is_none())
    }

    /// Errors unless the coloring is total and proper on `g`.
    pub fn ensure_proper(&self, g: &Multigraph) -> Result<()> {
        match self.conflict(g)? {
            None => Ok(()),
            Some((e, f, v, c)) => Err(Error::Improper(e, f, v, c)),
        }
    }

    /// Palette of `v`; errors on an improper coloring.
    pub fn palette_of(&self, g: &Multigraph, v: VertexId) -> Result<Palette> {
        self.ensure_proper(g)?;
        if v >= g.vertex_count() {
            return Err(Error::BadVertex(v));
        }
        Ok(self.palette_unchecked(g, v))
    }

    pub(crate) fn palette_unchecked(&self, g: &Multigraph, v: VertexId) -> Palette {
        Palette::from_iter(g.incident_edges(v).iter().map(|&e| self.colors[e]))
    }

    /// Palette of every vertex, in vertex order.
    pub fn palettes(&self, g: &Multigraph) -> Result<Vec<Palette>> {
        self.ensure_proper(g)?;
        Ok(g.vertices().map(|v| self.palette_unchecked(g, v)).collect())
    }

    pub fn distinct_palettes(&self, g: &Multigraph) -> Result<BTreeSet<Palette>> {
        Ok(self.palettes(g)?.into_iter().collect())
    }

    pub fn palette_count(&self, g: &Multigraph) -> Result<usize> {
        Ok(self.distinct_palettes(g)?.len())
    }
}

/// Canonically sorted, duplicate-free set of colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Palette(Vec<Color>);

impl Palette {
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Self {
        Self::from_iter(colors)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0.binary_search(&c).is_ok()
    }
}

impl FromIterator<Color> for Palette {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut v: Vec<Color> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Palette(v)
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// First-fit coloring in edge-id order; uses at most `2Δ - 1` colors.
pub fn greedy_coloring(g: &Multigraph) -> EdgeColoring {
    let mut colors = vec![0; g.edge_count()];
    let mut at: Vec<Vec<Color>> = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = (0..).find(|c| !at[u].contains(c) && !at[v].contains(c)).unwrap();
        colors[e] = c;
        at[u].push(c);
        at[v].push(c);
    }
    EdgeColoring::from_colors(colors)
}

/// Random proper coloring from `0..k`: edges in shuffled order, each taking a
/// uniform color among those still free at both ends. `None` if some edge gets stuck.
pub fn random_proper_coloring<R: Rng + ?Sized>(g: &Multigraph, k: u32, rng: &mut R) -> Option<EdgeColoring> {
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut colors = vec![0; g.edge_count()];
    let mut at: Vec<Vec<Color>> = vec![Vec::new(); g.vertex_count()];
    for e in order {
        let (u, v) = g.endpoints(e);
        let free: Vec<Color> = (0..k).filter(|c| !at[u].contains(c) && !at[v].contains(c)).collect();
        let &c = free.choose(rng)?;
        colors[e] = c;
        at[u].push(c);
        at[v].push(c);
    }
    Some(EdgeColoring { k, colors })
}
