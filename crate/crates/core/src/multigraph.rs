//! Loopless undirected multigraphs with per-edge identities.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// One requested edge class: `multiplicity` parallel copies of `{u, v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: VertexId,
    pub v: VertexId,
    pub multiplicity: usize,
}

impl EdgeSpec {
    pub fn new(u: VertexId, v: VertexId, multiplicity: usize) -> Self {
        EdgeSpec { u, v, multiplicity }
    }
}

impl From<(usize, usize, usize)> for EdgeSpec {
    fn from((u, v, multiplicity): (usize, usize, usize)) -> Self {
        EdgeSpec { u, v, multiplicity }
    }
}

/// An immutable loopless multigraph.
///
/// Every parallel copy of an edge has its own [`EdgeId`], assigned densely in
/// construction order. Endpoints are stored with the smaller id first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
    part: Vec<usize>,
}

impl Multigraph {
    pub fn build<I, S>(n: usize, specs: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<EdgeSpec>,
    {
        let mut edges = Vec::new();
        for (index, spec) in specs.into_iter().enumerate() {
            let EdgeSpec { u, v, multiplicity } = spec.into();
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(Error::Loop { index, vertex: u });
            }
            if multiplicity == 0 {
                return Err(Error::ZeroMultiplicity { index });
            }
            let pair = (u.min(v), u.max(v));
            edges.extend(std::iter::repeat_n(pair, multiplicity));
        }
        Ok(Self::from_edges(n, edges, vec![0; n]))
    }

    fn from_edges(n: usize, edges: Vec<(VertexId, VertexId)>, part: Vec<usize>) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        Multigraph {
            n,
            edges,
            incident,
            part,
        }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, Vec::new(), vec![0; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    /// Edges in id order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Degree with parallel edges counted.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incident.iter().map(Vec::len).collect()
    }

    /// Largest number of parallel copies between any pair (0 for edgeless graphs).
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities().values().copied().max().unwrap_or(0)
    }

    /// Number of parallel copies for every adjacent pair.
    pub fn multiplicities(&self) -> HashMap<(VertexId, VertexId), usize> {
        let mut m = HashMap::new();
        for &pair in &self.edges {
            *m.entry(pair).or_insert(0) += 1;
        }
        m
    }

    /// Edge classes in first-appearance order, as build specs.
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        let mut order: Vec<(VertexId, VertexId)> = Vec::new();
        let mut count: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for &pair in &self.edges {
            let c = count.entry(pair).or_insert(0);
            if *c == 0 {
                order.push(pair);
            }
            *c += 1;
        }
        order
            .into_iter()
            .map(|(u, v)| EdgeSpec::new(u, v, count[&(u, v)]))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Regular when every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        self.incident.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// The underlying simple graph: one edge per adjacent pair, first-appearance order.
    pub fn simple_projection(&self) -> Multigraph {
        let specs = self.edge_specs();
        let edges = specs.iter().map(|s| (s.u, s.v)).collect();
        Self::from_edges(self.n, edges, self.part.clone())
    }

    /// Degree of `v` in the underlying simple graph.
    pub fn simple_degree(&self, v: VertexId) -> usize {
        let mut nbrs: Vec<VertexId> = self.incident[v].iter().map(|&e| self.opposite(e, v)).collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        nbrs.len()
    }

    /// Index of the union part a vertex came from (0 unless built by [`disjoint_union`]).
    pub fn part_of(&self, v: VertexId) -> usize {
        self.part[v]
    }

    pub fn part_count(&self) -> usize {
        self.part.iter().max().map_or(0, |p| p + 1)
    }

    /// Connected component label per vertex, labels in order of lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(x) = stack.pop() {
                for &e in &self.incident[x] {
                    let y = self.opposite(e, x);
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |c| c + 1)
    }

    /// Subgraph induced on `keep`, vertices renumbered in the given order.
    pub fn induced(&self, keep: &[VertexId]) -> Result<Multigraph> {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n {
                return Err(Error::BadVertex(v));
            }
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| map[u] != usize::MAX && map[v] != usize::MAX)
            .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
            .collect();
        Ok(Self::from_edges(keep.len(), edges, vec![0; keep.len()]))
    }

    /// Adds one fresh vertex joined by a single edge to each vertex in `targets`.
    pub fn with_apex(&self, targets: &[VertexId]) -> Result<Multigraph> {
        let apex = self.n;
        let mut edges = self.edges.clone();
        for &t in targets {
            if t >= self.n {
                return Err(Error::BadVertex(t));
            }
            edges.push((t, apex));
        }
        let mut part = self.part.clone();
        part.push(self.part_count());
        Ok(Self::from_edges(self.n + 1, edges, part))
    }
}

/// Disjoint union; vertex and edge ids of part `i` are offset by the sizes of parts `0..i`.
pub fn disjoint_union(parts: &[Multigraph]) -> Result<Multigraph> {
    if parts.is_empty() {
        return Err(Error::EmptyUnion);
    }
    let mut edges = Vec::new();
    let mut part = Vec::new();
    let mut offset = 0;
    for (i, g) in parts.iter().enumerate() {
        edges.extend(g.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        part.extend(std::iter::repeat_n(i, g.n));
        offset += g.n;
    }
    Ok(Multigraph::from_edges(offset, edges, part))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubled_triangle() -> Multigraph {
        Multigraph::build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = Multigraph::build(2, [(0, 1, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn doubled_triangle_degrees() {
        let g = doubled_triangle();
        assert_eq!(g.edge_count(), 6);
        assert!(g.vertices().all(|v| g.degree(v) == 4));
        assert_eq!(g.max_multiplicity(), 2);
        let s = g.simple_projection();
        assert_eq!(s.edge_count(), 3);
        assert!(s.is_simple());
    }

    #[test]
    fn parallel_copies_get_consecutive_ids() {
        let g = Multigraph::build(3, [(1, 0, 3), (1, 2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 1), (0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_loops_and_bad_vertices() {
        assert_eq!(
            Multigraph::build(3, [(0, 0, 1)]),
            Err(Error::Loop { index: 0, vertex: 0 })
        );
        assert_eq!(
            Multigraph::build(3, [(0, 1, 1), (1, 3, 1)]),
            Err(Error::VertexOutOfRange { index: 1, vertex: 3, n: 3 })
        );
        assert_eq!(
            Multigraph::build(3, [(0, 1, 0)]),
            Err(Error::ZeroMultiplicity { index: 0 })
        );
    }

    #[test]
    fn edgeless_max_degree_is_zero() {
        assert_eq!(Multigraph::empty(4).max_degree(), 0);
    }

    #[test]
    fn union_offsets_and_parts() {
        let k2 = Multigraph::build(2, [(0, 1, 1)]).unwrap();
        let u = disjoint_union(&[k2.clone(), k2]).unwrap();
        assert_eq!(u.vertex_count(), 4);
        assert_eq!(u.edge_count(), 2);
        assert_eq!(u.part_count(), 2);
        assert_eq!(u.component_count(), 2);
        assert_eq!(u.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(disjoint_union(&[]), Err(Error::EmptyUnion));
    }

    #[test]
    fn union_of_one_is_identity() {
        let k3 = Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let u = disjoint_union(std::slice::from_ref(&k3)).unwrap();
        assert_eq!(u, k3);
    }

    #[test]
    fn apex_joins_targets() {
        let k2 = Multigraph::build(2, [(0, 1, 1)]).unwrap();
        let g = k2.with_apex(&[0, 1]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.edge_count(), 3);
    }
}
