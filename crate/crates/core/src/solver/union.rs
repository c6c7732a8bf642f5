//! Palette index of a disjoint union, computed part by part when that is provably exact.
//!
//! Palettes of different sizes never coincide. If at most one degree `d`
//! occurs in more than one part, and every such part has exactly one vertex of
//! degree `d`, then only those degree-`d` palettes can be shared across parts.
//! Each part's optimum can be relabeled so its degree-`d` palette becomes
//! `{0..d-1}`, and restricting any coloring of the union to a part leaves at
//! least `š(part) - 1` palettes of other sizes there. Hence
//! `š(union) = Σ š(part) - (m - 1)` where `m` parts share `d`, and `Σ š(part)`
//! when no degree is shared. `G^Δ` is the case `d = Δ`, `m = Δ - 2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{degree_diversity_lower_bound, palette_index_in, PaletteIndexResult, SearchConfig, Session};
use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnionPath {
    Decomposition,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionResult {
    pub result: PaletteIndexResult,
    pub path: UnionPath,
    /// Palette index of each part (decomposition path only).
    pub part_values: Vec<usize>,
    pub shared_degree: Option<usize>,
}

/// Which degree, if any, the parts may share a palette on; `Err(())` when the
/// decomposition argument does not apply.
fn shared_degree(parts: &[Vec<VertexId>], g: &Multigraph) -> std::result::Result<Option<usize>, ()> {
    let mut count: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for verts in parts.iter() {
        let mut per: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in verts {
            *per.entry(g.degree(v)).or_insert(0) += 1;
        }
        for (d, c) in per {
            count.entry(d).or_default().push(c);
        }
    }
    let shared: Vec<(usize, &Vec<usize>)> = count.iter().filter(|(_, c)| c.len() > 1).map(|(&d, c)| (d, c)).collect();
    match shared.as_slice() {
        [] => Ok(None),
        [(d, counts)] if counts.iter().all(|&c| c == 1) => Ok(Some(*d)),
        _ => Err(()),
    }
}

pub fn palette_index_union(g: &Multigraph, cfg: &SearchConfig) -> Result<UnionResult> {
    let session = Session::new(cfg);
    // declared parts win; otherwise split into connected components
    let label: Vec<usize> = if g.part_count() > 1 { g.vertices().map(|v| g.part_of(v)).collect() } else { g.components() };
    let mut parts: Vec<Vec<VertexId>> = vec![Vec::new(); label.iter().max().map_or(0, |m| m + 1)];
    for v in g.vertices() {
        parts[label[v]].push(v);
    }
    for &(a, b) in g.edges() {
        if label[a] != label[b] {
            return Err(Error::Components(format!("edge {a}-{b} crosses parts")));
        }
    }
    let shared = match (parts.len() > 1).then(|| shared_degree(&parts, g)) {
        Some(Ok(shared)) => shared,
        _ => {
            let result = palette_index_in(g, cfg, &session)?;
            return Ok(UnionResult { result, path: UnionPath::Direct, part_values: Vec::new(), shared_degree: None });
        }
    };

    let mut colors = vec![0u32; g.edge_count()];
    let mut edge_of_part: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    for (e, &(a, _)) in g.edges().iter().enumerate() {
        edge_of_part[label[a]].push(e);
    }
    let mut next_fresh = shared.unwrap_or(0) as u32;
    let mut values = Vec::new();
    let mut exact = true;
    let mut chi = 0;
    let mut cap = 0;
    for (verts, edges) in parts.iter().zip(&edge_of_part) {
        let sub = g.induced(verts)?;
        let r = palette_index_in(&sub, cfg, &session)?;
        exact &= r.exact;
        chi = chi.max(r.explored_k.0);
        cap = cap.max(r.explored_k.1);
        values.push(r.value);

        // Move the shared-degree palette onto 0..d and everything else onto fresh colors.
        let mut map: Vec<Option<u32>> = vec![None; r.witness.k() as usize];
        if let Some(d) = shared {
            if let Some(local) = (0..sub.vertex_count()).find(|&v| sub.degree(v) == d) {
                let mut sorted: Vec<u32> = sub.incident_edges(local).iter().map(|&e| r.witness.color(e)).collect();
                sorted.sort_unstable();
                for (i, c) in sorted.into_iter().enumerate() {
                    map[c as usize] = Some(i as u32);
                }
            }
        }
        for slot in map.iter_mut().filter(|m| m.is_none()) {
            *slot = Some(next_fresh);
            next_fresh += 1;
        }
        // induced() keeps edge order within the part
        for (local, &e) in edges.iter().enumerate() {
            colors[e] = map[r.witness.color(local) as usize].unwrap();
        }
    }
    let merged = values.iter().sum::<usize>() + 1 - shared.map_or(1, |d| parts.iter().filter(|p| p.iter().any(|&v| g.degree(v) == d)).count());
    let witness = EdgeColoring::from_colors(colors);
    let achieved = witness.palette_count(g)?;
    debug_assert_eq!(achieved, merged);
    let witness = witness.normalized();
    Ok(UnionResult {
        result: PaletteIndexResult {
            value: achieved,
            colors_used: witness.k() as usize,
            witness,
            exact,
            explored_k: (chi, cap),
            lower_bound: degree_diversity_lower_bound(g),
            nodes: session.nodes(),
            elapsed: session.elapsed(),
        },
        path: UnionPath::Decomposition,
        part_values: values,
        shared_degree: shared,
    })
}
