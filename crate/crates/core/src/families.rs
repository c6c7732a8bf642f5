//! Generators for the windmill family `H^Δ_t`, its unions, and the standard
//! small graphs used as test targets.
//!
//! Only even `Δ` is supported for the windmill-derived families: the odd case
//! needs a modified construction that is not pinned down anywhere, so it is
//! rejected rather than guessed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{disjoint_union, EdgeSpec, Multigraph, VertexId};

fn family_err(msg: impl Into<String>) -> Error {
    Error::Family(msg.into())
}

fn check_even_delta(delta: usize, min: usize) -> Result<()> {
    if delta % 2 == 1 {
        return Err(family_err(format!(
            "Δ = {delta} is odd; only even Δ is supported (the odd-Δ variant of the construction is unspecified)"
        )));
    }
    if delta < min {
        return Err(family_err(format!("Δ = {delta} is below the minimum {min}")));
    }
    Ok(())
}

/// `H^Δ_t`: a center `u` joined to `v^0..v^{Δ-1}` with `t` parallel rim edges
/// on each pair `v^{2i} v^{2i+1}`.
///
/// Vertex 0 is `u`, vertex `j + 1` is `v^j`. Edge `j` is the spoke `e^j = u v^j`;
/// rim edges follow, `t` consecutive ids per pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Windmill {
    pub graph: Multigraph,
    pub delta: usize,
    pub t: usize,
}

impl Windmill {
    fn construct(delta: usize, t: usize) -> Self {
        let spokes = (0..delta).map(|j| EdgeSpec::new(0, j + 1, 1));
        let rims = (0..delta).step_by(2).map(|j| EdgeSpec::new(j + 1, j + 2, t));
        let graph = Multigraph::build(delta + 1, spokes.chain(rims)).expect("windmill specs are valid");
        Windmill { graph, delta, t }
    }

    pub fn center(&self) -> VertexId {
        0
    }

    /// Vertex `v^j`.
    pub fn rim(&self, j: usize) -> VertexId {
        j + 1
    }

    /// The index `j'` whose rim vertex is joined to `v^j`.
    pub fn partner(&self, j: usize) -> usize {
        j ^ 1
    }

    /// Edge id of the spoke `u v^j`.
    pub fn spoke(&self, j: usize) -> usize {
        j
    }

    /// Induced submultigraph on `u, v^j, v^{j'}`, vertices in that order with `j < j'` normalized.
    pub fn lobe(&self, j: usize) -> Result<Multigraph> {
        if j >= self.delta {
            return Err(family_err(format!("lobe index {j} out of range 0..{}", self.delta)));
        }
        let lo = j & !1;
        self.graph.induced(&[self.center(), self.rim(lo), self.rim(lo + 1)])
    }
}

/// The simple windmill `H^Δ` (`Δ` even, `Δ ≥ 2`).
pub fn windmill(delta: usize) -> Result<Windmill> {
    check_even_delta(delta, 2)?;
    Ok(Windmill::construct(delta, 1))
}

/// `H^Δ_t` for even `Δ ≥ 4` and `1 ≤ t ≤ Δ - 2`.
pub fn h_delta_t(delta: usize, t: usize) -> Result<Windmill> {
    check_even_delta(delta, 4)?;
    if t == 0 || t > delta - 2 {
        return Err(family_err(format!("t = {t} must lie in 1..={}", delta - 2)));
    }
    Ok(Windmill::construct(delta, t))
}

/// `G^Δ`, the disjoint union of `H^Δ_1, …, H^Δ_{Δ-2}`, optionally with an apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindmillUnion {
    pub graph: Multigraph,
    pub delta: usize,
    pub parts: Vec<Windmill>,
    /// Center of each part in the union's numbering.
    pub centers: Vec<VertexId>,
    /// The vertex joined to every center, when present.
    pub apex: Option<VertexId>,
}

impl WindmillUnion {
    /// Multiplicity `t` of the part containing `v`, `None` for the apex.
    pub fn t_of(&self, v: VertexId) -> Option<usize> {
        self.parts.get(self.graph.part_of(v)).map(|p| p.t)
    }
}

pub fn g_delta(delta: usize) -> Result<WindmillUnion> {
    check_even_delta(delta, 4)?;
    let parts: Vec<Windmill> = (1..=delta - 2).map(|t| Windmill::construct(delta, t)).collect();
    let graphs: Vec<Multigraph> = parts.iter().map(|p| p.graph.clone()).collect();
    let graph = disjoint_union(&graphs)?;
    let centers = (0..parts.len()).map(|i| i * (delta + 1)).collect();
    Ok(WindmillUnion {
        graph,
        delta,
        parts,
        centers,
        apex: None,
    })
}

/// `G^Δ` plus one vertex adjacent to every degree-`Δ` center.
pub fn g_delta_tilde(delta: usize) -> Result<WindmillUnion> {
    let mut u = g_delta(delta)?;
    u.graph = u.graph.with_apex(&u.centers)?;
    u.apex = Some(u.graph.vertex_count() - 1);
    Ok(u)
}

pub fn complete(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(family_err("complete graph needs n ≥ 1"));
    }
    let specs = (0..n).flat_map(|i| (i + 1..n).map(move |j| EdgeSpec::new(i, j, 1)));
    Multigraph::build(n, specs)
}

/// `K_{m,n}` with `u_i = i`, `v_j = m + j`; edge `i·n + j` is `u_i v_j`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Multigraph> {
    if m == 0 || n == 0 {
        return Err(family_err("complete bipartite graph needs m, n ≥ 1"));
    }
    let specs = (0..m).flat_map(|i| (0..n).map(move |j| EdgeSpec::new(i, m + j, 1)));
    Multigraph::build(m + n, specs)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(family_err("path needs n ≥ 1"));
    }
    Multigraph::build(n, (1..n).map(|i| EdgeSpec::new(i - 1, i, 1)))
}

pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(family_err("cycle needs n ≥ 3"));
    }
    Multigraph::build(n, (0..n).map(|i| EdgeSpec::new(i, (i + 1) % n, 1)))
}

/// `K_{1,n}` with center 0.
pub fn star(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(family_err("star needs n ≥ 1 leaves"));
    }
    Multigraph::build(n + 1, (1..=n).map(|i| EdgeSpec::new(0, i, 1)))
}

/// Seeded random multigraph.
///
/// Pairs `(i, j)`, `i < j`, are visited in lexicographic order on a ChaCha8
/// stream seeded with `seed`; each is present with probability `p`, and a
/// present pair gets a multiplicity drawn uniformly from `1..=max_mult`.
pub fn random_multigraph(n: usize, p: f64, max_mult: usize, seed: u64) -> Result<Multigraph> {
    if n == 0 || !(0.0..=1.0).contains(&p) || max_mult == 0 {
        return Err(family_err("random multigraph needs n ≥ 1, 0 ≤ p ≤ 1, max_mult ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                specs.push(EdgeSpec::new(i, j, rng.gen_range(1..=max_mult)));
            }
        }
    }
    Multigraph::build(n, specs)
}

/// Seeded random recursive tree: vertex `i ≥ 1` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Multigraph> {
    if n == 0 {
        return Err(family_err("tree needs n ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<EdgeSpec> = (1..n).map(|i| EdgeSpec::new(rng.gen_range(0..i), i, 1)).collect();
    Multigraph::build(n, specs)
}

/// A family name plus parameters, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Windmill { delta: usize },
    HDeltaT { delta: usize, t: usize },
    GDelta { delta: usize },
    GDeltaTilde { delta: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Random { n: usize, p: f64, max_mult: usize, seed: u64 },
    Tree { n: usize, seed: u64 },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Multigraph> {
        match *self {
            FamilySpec::Windmill { delta } => windmill(delta).map(|w| w.graph),
            FamilySpec::HDeltaT { delta, t } => h_delta_t(delta, t).map(|w| w.graph),
            FamilySpec::GDelta { delta } => g_delta(delta).map(|u| u.graph),
            FamilySpec::GDeltaTilde { delta } => g_delta_tilde(delta).map(|u| u.graph),
            FamilySpec::Complete { n } => complete(n),
            FamilySpec::CompleteBipartite { m, n } => complete_bipartite(m, n),
            FamilySpec::Path { n } => path(n),
            FamilySpec::Cycle { n } => cycle(n),
            FamilySpec::Star { n } => star(n),
            FamilySpec::Random { n, p, max_mult, seed } => random_multigraph(n, p, max_mult, seed),
            FamilySpec::Tree { n, seed } => random_tree(n, seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windmill_two_is_triangle() {
        let w = windmill(2).unwrap();
        assert_eq!(w.graph.vertex_count(), 3);
        assert_eq!(w.graph.edge_count(), 3);
        assert!(w.graph.vertices().all(|v| w.graph.degree(v) == 2));
    }

    #[test]
    fn windmill_four_counts() {
        let w = windmill(4).unwrap();
        assert_eq!(w.graph.vertex_count(), 5);
        assert_eq!(w.graph.edge_count(), 6);
        assert_eq!(w.graph, h_delta_t(4, 1).unwrap().graph);
    }

    #[test]
    fn h82_matches_figure() {
        let h = h_delta_t(8, 2).unwrap();
        assert_eq!(h.graph.vertex_count(), 9);
        assert_eq!(h.graph.edge_count(), 16);
        assert_eq!(h.graph.degree(h.center()), 8);
        assert!((0..8).all(|j| h.graph.degree(h.rim(j)) == 3));
        assert_eq!(h.lobe(3).unwrap(), h.lobe(2).unwrap());
    }

    #[test]
    fn h42_counts_and_lobes() {
        let h = h_delta_t(4, 2).unwrap();
        assert_eq!(h.graph.vertex_count(), 5);
        assert_eq!(h.graph.edge_count(), 8);
        assert_eq!(h.graph.degree(h.rim(0)), 3);
        let lobe = h.lobe(0).unwrap();
        assert_eq!(lobe.vertex_count(), 3);
        assert_eq!(lobe.edge_count(), 4);
        assert_eq!(h.partner(0), 1);
        assert_eq!(h.partner(3), 2);
        let tri = h_delta_t(4, 1).unwrap().lobe(0).unwrap();
        assert_eq!(tri, complete(3).unwrap());
        assert!(h.lobe(4).is_err());
    }

    #[test]
    fn parameter_checks() {
        assert!(h_delta_t(4, 3).is_err());
        assert!(h_delta_t(4, 0).is_err());
        assert!(h_delta_t(5, 1).is_err());
        assert!(h_delta_t(2, 1).is_err());
        assert!(windmill(3).is_err());
        assert!(g_delta(7).is_err());
        assert!(cycle(2).is_err());
        assert!(random_multigraph(4, 1.5, 1, 0).is_err());
    }

    #[test]
    fn g_delta_four() {
        let g = g_delta(4).unwrap();
        assert_eq!(g.graph.vertex_count(), 10);
        assert_eq!(g.graph.edge_count(), 14);
        assert_eq!(g.parts[0].graph.edge_count(), 6);
        assert_eq!(g.parts[1].graph.edge_count(), 8);
        assert_eq!(g.centers, vec![0, 5]);
        assert_eq!(g.t_of(7), Some(2));
    }

    #[test]
    fn g_delta_six() {
        let g = g_delta(6).unwrap();
        assert_eq!(g.graph.vertex_count(), 28);
        assert_eq!(g.graph.component_count(), 4);
    }

    #[test]
    fn g_delta_tilde_four() {
        let g = g_delta_tilde(4).unwrap();
        let apex = g.apex.unwrap();
        assert_eq!(g.graph.vertex_count(), 11);
        assert_eq!(g.graph.degree(apex), 2);
        assert_eq!(g.graph.degree(0), 5);
        assert_eq!(g.graph.degree(5), 5);
        assert_eq!(g.graph.max_degree(), 5);
        assert_eq!(g.t_of(apex), None);
    }

    #[test]
    fn standard_generators() {
        let k4 = complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.is_regular() && k4.degree(0) == 3);
        let k56 = complete_bipartite(5, 6).unwrap();
        assert_eq!(k56.edge_count(), 30);
        assert_eq!(k56.max_degree(), 6);
        assert_eq!(k56.endpoints(7), (1, 6));
        assert_eq!(star(3).unwrap().max_degree(), 3);
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = random_multigraph(6, 0.5, 2, 42).unwrap();
        let b = random_multigraph(6, 0.5, 2, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.max_multiplicity() <= 2);
        let t = random_tree(12, 3).unwrap();
        assert_eq!(t.edge_count(), 11);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t, random_tree(12, 3).unwrap());
    }

    #[test]
    fn family_spec_dispatch() {
        let g = FamilySpec::HDeltaT { delta: 8, t: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 16);
        assert!(FamilySpec::HDeltaT { delta: 5, t: 1 }.build().is_err());
    }
}
