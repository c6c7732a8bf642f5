use std::collections::BTreeMap;

use palette_core::coloring::random_proper_coloring;
use palette_core::families::{h_delta_t, random_multigraph};
use palette_core::io::{parse_color_matrix, parse_coloring, parse_multigraph, serialize_coloring, serialize_multigraph};
use palette_core::palette_graph::{palette_class_simple_degree, PaletteMultigraph};
use palette_core::solver::min_palettes_with_k_colors;
use palette_core::{EdgeColoring, Multigraph, SearchConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn colored(n: usize, p: f64, mult: usize, seed: u64) -> (Multigraph, EdgeColoring) {
    let g = random_multigraph(n, p, mult, seed).unwrap();
    let k = (2 * g.max_degree()).max(1) as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_proper_coloring(&g, k, &mut rng).expect("2Δ colors never get stuck");
    (g, c)
}

proptest! {
    #[test]
    fn degree_sum_is_twice_edges(n in 1usize..10, p in 0.0f64..1.0, mult in 1usize..4, seed: u64) {
        let g = random_multigraph(n, p, mult, seed).unwrap();
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn projection_is_idempotent(n in 1usize..10, p in 0.0f64..1.0, mult in 1usize..4, seed: u64) {
        let g = random_multigraph(n, p, mult, seed).unwrap();
        let s = g.simple_projection();
        prop_assert!(s.is_simple());
        prop_assert_eq!(s.simple_projection(), s.clone());
        for v in g.vertices() {
            prop_assert_eq!(s.degree(v), g.simple_degree(v));
        }
    }

    #[test]
    fn relabeling_keeps_palette_count(n in 2usize..9, p in 0.2f64..1.0, mult in 1usize..4, seed: u64) {
        let (g, c) = colored(n, p, mult, seed);
        let mut perm: Vec<u32> = (0..c.k()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xabc));
        let d = c.relabel(&perm).unwrap();
        prop_assert!(d.is_proper(&g).unwrap());
        prop_assert_eq!(d.palette_count(&g).unwrap(), c.palette_count(&g).unwrap());
    }

    #[test]
    fn palette_graph_identities(n in 2usize..11, p in 0.2f64..1.0, mult in 1usize..4, seed: u64) {
        let (g, c) = colored(n, p, mult, seed);
        let gamma = PaletteMultigraph::build(&g, &c).unwrap();
        prop_assert_eq!(gamma.vertex_count(), c.palette_count(&g).unwrap());
        prop_assert_eq!(gamma.edge_count(), g.simple_projection().edge_count());
        let mut degree_sum = 0;
        for pal in gamma.palettes() {
            let d = gamma.degree(pal).unwrap();
            prop_assert_eq!(d, palette_class_simple_degree(&g, &c, pal).unwrap());
            degree_sum += d;
        }
        prop_assert_eq!(degree_sum, 2 * gamma.edge_count());
    }

    #[test]
    fn windmill_forest_lemma(half in 2usize..4, t_pick in 0usize..4, extra in 0u32..4, seed: u64) {
        let delta = 2 * half;
        let t = 1 + t_pick % (delta - 2);
        let w = h_delta_t(delta, t).unwrap();
        let g = &w.graph;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = loop {
            if let Some(c) = random_proper_coloring(g, delta as u32 + extra + 2, &mut rng) {
                break c;
            }
        };
        let gamma = PaletteMultigraph::build(g, &c).unwrap();
        let central = c.palette_of(g, w.center()).unwrap();
        let minus = gamma.remove_palette(&central).unwrap();
        prop_assert!(minus.is_simple_forest());
        let mut count: BTreeMap<_, usize> = BTreeMap::new();
        for j in 0..delta {
            *count.entry(c.palette_of(g, w.rim(j)).unwrap()).or_default() += 1;
        }
        for pal in minus.palettes() {
            prop_assert_eq!(minus.degree(pal).unwrap(), count[pal]);
        }
    }

    #[test]
    fn graph_file_round_trip(n in 1usize..10, p in 0.0f64..1.0, mult in 1usize..4, seed: u64) {
        let g = random_multigraph(n, p, mult, seed).unwrap();
        let text = serialize_multigraph(&g);
        let back = parse_multigraph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_multigraph(&back), text);
    }

    #[test]
    fn coloring_file_round_trip(n in 2usize..9, p in 0.2f64..1.0, mult in 1usize..4, seed: u64) {
        let (g, c) = colored(n, p, mult, seed);
        let text = serialize_coloring(&c);
        prop_assert_eq!(parse_coloring(&text, &g).unwrap(), c);
    }

    #[test]
    fn matrix_proper_iff_lines_distinct(rows in prop::collection::vec(prop::collection::vec(1u32..6, 3), 1..4)) {
        let text: String = rows.iter().map(|r| format!("{} {} {}\n", r[0], r[1], r[2])).collect();
        let distinct = |xs: &[u32]| { let mut v = xs.to_vec(); v.sort(); v.dedup(); v.len() == xs.len() };
        let lines_ok = rows.iter().all(|r| distinct(r))
            && (0..3).all(|j| distinct(&rows.iter().map(|r| r[j]).collect::<Vec<_>>()));
        match parse_color_matrix(&text) {
            Ok((g, c)) => {
                prop_assert!(lines_ok);
                prop_assert!(c.is_proper(&g).unwrap());
            }
            Err(_) => prop_assert!(!lines_ok),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn min_palettes_nonincreasing_in_k(n in 3usize..6, p in 0.3f64..1.0, seed: u64) {
        let g = random_multigraph(n, p, 2, seed).unwrap();
        prop_assume!(g.edge_count() > 0 && g.edge_count() <= 8);
        let cfg = SearchConfig::default();
        let mut last = usize::MAX;
        for k in g.max_degree() as u32..=g.edge_count() as u32 {
            match min_palettes_with_k_colors(&g, k, &cfg) {
                Ok(r) => {
                    prop_assert!(r.exact);
                    prop_assert!(r.count <= last);
                    last = r.count;
                }
                Err(palette_core::Error::BelowChromaticIndex { .. }) => prop_assert_eq!(last, usize::MAX),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
