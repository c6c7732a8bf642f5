//! Graph corpora shared by the verification suites.

use palette_core::families::{
    complete, complete_bipartite, cycle, g_delta, g_delta_tilde, h_delta_t, path, random_multigraph, star, windmill,
};
use palette_core::Multigraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct NamedGraph {
    pub name: String,
    pub graph: Multigraph,
}

fn named(name: impl Into<String>, graph: Multigraph) -> NamedGraph {
    NamedGraph { name: name.into(), graph }
}

pub fn petersen() -> Multigraph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5, 1));
    let spokes = (0..5).map(|i| (i, i + 5, 1));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5, 1));
    Multigraph::build(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Every small graph the project refers to by name. Multigraphs are included;
/// filter with [`Multigraph::is_simple`] where only simple graphs make sense.
pub fn named_graphs() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(named(format!("K{n}"), complete(n).unwrap()));
    }
    for n in 3..=8 {
        out.push(named(format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 2..=7 {
        out.push(named(format!("P{n}"), path(n).unwrap()));
    }
    for n in 2..=5 {
        out.push(named(format!("K1,{n}"), star(n).unwrap()));
    }
    for (m, n) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4), (3, 5), (4, 5)] {
        out.push(named(format!("K{m},{n}"), complete_bipartite(m, n).unwrap()));
    }
    out.push(named("petersen", petersen()));
    out.push(named("K4-e", Multigraph::build(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (2, 3, 1)]).unwrap()));
    for delta in [2, 4, 6] {
        out.push(named(format!("windmill{delta}"), windmill(delta).unwrap().graph));
    }
    for t in 1..=2 {
        out.push(named(format!("H4_{t}"), h_delta_t(4, t).unwrap().graph));
    }
    out.push(named("G4", g_delta(4).unwrap().graph));
    out.push(named("G4~", g_delta_tilde(4).unwrap().graph));
    out.push(named("doubled-triangle", Multigraph::build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap()));
    out
}

/// Seeded random simple graphs on `3..=n_max` vertices with edge probability in `[0.3, 0.8)`.
pub fn random_simple_graphs(count: usize, n_max: usize, seed: u64) -> Vec<NamedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(3..=n_max.max(3));
            let p = rng.gen_range(0.3..0.8);
            let sub = rng.gen::<u64>();
            named(format!("random#{i}"), random_multigraph(n, p, 1, sub).unwrap())
        })
        .collect()
}
