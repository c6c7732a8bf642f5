//! The palette multigraph of a colored multigraph.
//!
//! Vertices are the distinct palettes of `(G, c)`. Every adjacent pair
//! `{x, y}` of the underlying simple graph contributes one edge between
//! `P(x)` and `P(y)`, which is a loop when the two palettes coincide. Parallel
//! edges and repeated loops are kept.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coloring::{EdgeColoring, Palette};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaletteMultigraph {
    palettes: Vec<Palette>,
    /// Endpoint indices into `palettes`, smaller first; equal indices encode a loop.
    edges: Vec<(usize, usize)>,
}

/// Outcome of [`PaletteMultigraph::forest_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestCheck {
    Forest,
    Loop(Palette),
    MultiEdge(Palette, Palette),
    /// Palettes along a cycle, first vertex not repeated.
    Cycle(Vec<Palette>),
}

impl ForestCheck {
    pub fn is_forest(&self) -> bool {
        matches!(self, ForestCheck::Forest)
    }
}

/// Average degree kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AverageDegree {
    pub degree_sum: usize,
    pub vertices: usize,
}

impl AverageDegree {
    pub fn value(&self) -> f64 {
        self.degree_sum as f64 / self.vertices as f64
    }

    pub fn less_than(&self, bound: usize) -> bool {
        self.degree_sum < bound * self.vertices
    }
}

impl PaletteMultigraph {
    pub fn build(g: &Multigraph, c: &EdgeColoring) -> Result<Self> {
        let per_vertex = c.palettes(g)?;
        let index: BTreeMap<&Palette, usize> = per_vertex
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let edges = g
            .edge_specs()
            .into_iter()
            .map(|s| {
                let (a, b) = (index[&per_vertex[s.u]], index[&per_vertex[s.v]]);
                (a.min(b), a.max(b))
            })
            .collect();
        let palettes = index.into_keys().cloned().collect();
        Ok(PaletteMultigraph { palettes, edges })
    }

    /// Palettes in sorted order.
    pub fn palettes(&self) -> &[Palette] {
        &self.palettes
    }

    pub fn vertex_count(&self) -> usize {
        self.palettes.len()
    }

    /// Loops and ordinary edges, each counted once.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Edges as palette pairs.
    pub fn edges(&self) -> impl Iterator<Item = (&Palette, &Palette)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.palettes[a], &self.palettes[b]))
    }

    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn index_of(&self, p: &Palette) -> Result<usize> {
        self.palettes
            .binary_search(p)
            .map_err(|_| Error::UnknownPalette(p.to_string()))
    }

    pub fn contains(&self, p: &Palette) -> bool {
        self.palettes.binary_search(p).is_ok()
    }

    /// Incidence count at `p`; a loop contributes 2.
    pub fn degree(&self, p: &Palette) -> Result<usize> {
        let i = self.index_of(p)?;
        Ok(self.degree_at(i))
    }

    fn degree_at(&self, i: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == i) as usize + (b == i) as usize)
            .sum()
    }

    /// Removes the vertex `p` together with every edge and loop touching it.
    pub fn remove_palette(&self, p: &Palette) -> Result<PaletteMultigraph> {
        let gone = self.index_of(p)?;
        let shift = |i: usize| if i > gone { i - 1 } else { i };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != gone && b != gone)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        let mut palettes = self.palettes.clone();
        palettes.remove(gone);
        Ok(PaletteMultigraph { palettes, edges })
    }

    /// Loops first, then repeated edges, then cycles.
    pub fn forest_check(&self) -> ForestCheck {
        if let Some(&(a, _)) = self.edges.iter().find(|(a, b)| a == b) {
            return ForestCheck::Loop(self.palettes[a].clone());
        }
        let mut seen = HashSet::new();
        for &(a, b) in &self.edges {
            if !seen.insert((a, b)) {
                return ForestCheck::MultiEdge(self.palettes[a].clone(), self.palettes[b].clone());
            }
        }
        let n = self.palettes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                let path = tree_path(&forest, a, b);
                return ForestCheck::Cycle(path.into_iter().map(|i| self.palettes[i].clone()).collect());
            }
            parent[ra] = rb;
            forest[a].push(b);
            forest[b].push(a);
        }
        ForestCheck::Forest
    }

    pub fn is_simple_forest(&self) -> bool {
        self.forest_check().is_forest()
    }

    pub fn average_degree(&self) -> Result<AverageDegree> {
        if self.palettes.is_empty() {
            return Err(Error::EmptyPaletteGraph);
        }
        Ok(AverageDegree {
            degree_sum: 2 * self.edges.len(),
            vertices: self.palettes.len(),
        })
    }
}

/// Vertex sequence of the unique path from `from` to `to` in a forest.
fn tree_path(forest: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; forest.len()];
    prev[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &forest[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Right-hand side of the degree identity: total simple-graph degree of all
/// vertices of `g` whose palette under `c` equals `p`.
pub fn palette_class_simple_degree(g: &Multigraph, c: &EdgeColoring, p: &Palette) -> Result<usize> {
    let palettes = c.palettes(g)?;
    Ok(g.vertices()
        .filter(|&v| &palettes[v] == p)
        .map(|v| g.simple_degree(v))
        .sum())
}

/// Vertices of `g` carrying palette `p`.
pub fn vertices_with_palette(g: &Multigraph, c: &EdgeColoring, p: &Palette) -> Result<Vec<VertexId>> {
    let palettes = c.palettes(g)?;
    Ok(g.vertices().filter(|&v| &palettes[v] == p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal(c: &[u32]) -> Palette {
        Palette::new(c.iter().copied())
    }

    fn k2_gamma() -> PaletteMultigraph {
        let g = Multigraph::build(2, [(0, 1, 1)]).unwrap();
        PaletteMultigraph::build(&g, &EdgeColoring::from_colors(vec![0])).unwrap()
    }

    fn p3_gamma() -> PaletteMultigraph {
        let g = Multigraph::build(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        PaletteMultigraph::build(&g, &EdgeColoring::from_colors(vec![0, 1])).unwrap()
    }

    #[test]
    fn single_edge_gives_loop() {
        let gamma = k2_gamma();
        assert_eq!(gamma.vertex_count(), 1);
        assert_eq!(gamma.edge_count(), 1);
        assert_eq!(gamma.loop_count(), 1);
        assert_eq!(gamma.degree(&pal(&[0])).unwrap(), 2);
        assert_eq!(gamma.forest_check(), ForestCheck::Loop(pal(&[0])));
    }

    #[test]
    fn path_gamma() {
        let gamma = p3_gamma();
        assert_eq!(gamma.vertex_count(), 3);
        assert_eq!(gamma.edge_count(), 2);
        assert_eq!(gamma.loop_count(), 0);
        assert_eq!(gamma.degree(&pal(&[0, 1])).unwrap(), 2);
        assert!(gamma.is_simple_forest());
        assert!(gamma.degree(&pal(&[5])).is_err());
    }

    #[test]
    fn remove_middle_palette() {
        let r = p3_gamma().remove_palette(&pal(&[0, 1])).unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.edge_count(), 0);
        assert!(r.remove_palette(&pal(&[0, 1])).is_err());
    }

    #[test]
    fn removing_looped_vertex_drops_loop() {
        let r = k2_gamma().remove_palette(&pal(&[0])).unwrap();
        assert_eq!(r.vertex_count(), 0);
        assert_eq!(r.edge_count(), 0);
        assert_eq!(r.average_degree(), Err(Error::EmptyPaletteGraph));
    }

    #[test]
    fn doubled_triangle_gamma() {
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        let c = EdgeColoring::from_colors((0..6).collect());
        let gamma = PaletteMultigraph::build(&g, &c).unwrap();
        assert_eq!(gamma.vertex_count(), 3);
        assert_eq!(gamma.edge_count(), 3);
        match gamma.forest_check() {
            ForestCheck::Cycle(cyc) => assert_eq!(cyc.len(), 3),
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn repeated_loops_and_edges() {
        let g = Multigraph::build(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let gamma = PaletteMultigraph::build(&g, &EdgeColoring::from_colors(vec![0, 0])).unwrap();
        assert_eq!(gamma.vertex_count(), 1);
        assert_eq!(gamma.loop_count(), 2);
        assert_eq!(gamma.forest_check(), ForestCheck::Loop(pal(&[0])));

        // two copies of P3 colored 0,1 give the edge {0}-{0,1} twice
        let g = Multigraph::build(6, [(0, 1, 1), (1, 2, 1), (3, 4, 1), (4, 5, 1)]).unwrap();
        let c = EdgeColoring::from_colors(vec![0, 1, 0, 1]);
        let gamma = PaletteMultigraph::build(&g, &c).unwrap();
        assert_eq!(gamma.edge_count(), 4);
        assert_eq!(
            gamma.forest_check(),
            ForestCheck::MultiEdge(pal(&[0]), pal(&[0, 1]))
        );
    }

    #[test]
    fn average_degree_values() {
        let single = PaletteMultigraph {
            palettes: vec![pal(&[0])],
            edges: vec![],
        };
        assert_eq!(single.average_degree().unwrap().value(), 0.0);
        let two = PaletteMultigraph {
            palettes: vec![pal(&[0]), pal(&[1])],
            edges: vec![(0, 1)],
        };
        let avg = two.average_degree().unwrap();
        assert_eq!(avg.value(), 1.0);
        assert!(avg.less_than(2));
    }

    #[test]
    fn triangle_shaped_gamma_has_cycle() {
        let tri = PaletteMultigraph {
            palettes: vec![pal(&[0]), pal(&[1]), pal(&[2])],
            edges: vec![(0, 1), (1, 2), (0, 2)],
        };
        assert_eq!(
            tri.forest_check(),
            ForestCheck::Cycle(vec![pal(&[0]), pal(&[1]), pal(&[2])])
        );
    }
}
