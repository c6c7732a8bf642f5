//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers or text and returns a JSON string, so the
//! page needs no generated type glue beyond `wasm-bindgen`'s own.

use std::time::Duration;

use palette_core::coloring::random_proper_coloring;
use palette_core::families::h_delta_t;
use palette_core::io::parse_multigraph;
use palette_core::palette_graph::PaletteMultigraph;
use palette_core::solver::palette_index;
use palette_core::{Multigraph, SearchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Larger inputs would freeze the page.
pub const MAX_DEMO_EDGES: usize = 30;

fn graph_json(g: &Multigraph) -> Value {
    json!({ "n": g.vertex_count(), "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>() })
}

/// `H^Δ_t` with vertex 0 as the center.
pub fn windmill_json(delta: usize, t: usize) -> Result<Value, String> {
    let w = h_delta_t(delta, t).map_err(|e| e.to_string())?;
    Ok(json!({ "delta": delta, "t": t, "center": w.center(), "graph": graph_json(&w.graph) }))
}

/// A random proper coloring of `H^Δ_t` from `0..k`, its palettes and its palette multigraph.
pub fn random_coloring_json(delta: usize, t: usize, k: u32, seed: u64) -> Result<Value, String> {
    let w = h_delta_t(delta, t).map_err(|e| e.to_string())?;
    let g = &w.graph;
    if (k as usize) < delta {
        return Err(format!("k = {k} is below Δ = {delta}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..1000)
        .find_map(|_| random_proper_coloring(g, k, &mut rng))
        .ok_or("no proper coloring found; try more colors")?;
    let gamma = PaletteMultigraph::build(g, &c).map_err(|e| e.to_string())?;
    let central = c.palette_of(g, w.center()).map_err(|e| e.to_string())?;
    let without = gamma.remove_palette(&central).map_err(|e| e.to_string())?;
    let palettes = c.palettes(g).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(g),
        "colors": c.colors(),
        "palettes": palettes.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "gamma": {
            "nodes": gamma.palettes().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "edges": gamma.edge_indices(),
            "central": gamma.palettes().iter().position(|p| *p == central),
        },
        "forest_without_central": without.is_simple_forest(),
    }))
}

/// Palette index of a graph in the text format, within a time budget.
pub fn palette_index_json(text: &str, budget_ms: u32) -> Result<Value, String> {
    let g = parse_multigraph(text).map_err(|e| e.to_string())?;
    if g.edge_count() > MAX_DEMO_EDGES {
        return Err(format!("{} edges; the demo stops at {MAX_DEMO_EDGES}", g.edge_count()));
    }
    let cfg = SearchConfig::default().with_time_budget(Duration::from_millis(budget_ms.into()));
    let r = palette_index(&g, &cfg).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(&g),
        "value": r.value,
        "exact": r.exact,
        "lower_bound": r.lower_bound,
        "colors_used": r.colors_used,
        "colors": r.witness.colors(),
        "palettes": r.witness.palettes(&g).map_err(|e| e.to_string())?.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "nodes": r.nodes,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn windmill(delta: usize, t: usize) -> Result<String, JsValue> {
    to_js(windmill_json(delta, t))
}

#[wasm_bindgen]
pub fn random_coloring(delta: usize, t: usize, k: u32, seed: u64) -> Result<String, JsValue> {
    to_js(random_coloring_json(delta, t, k, seed))
}

#[wasm_bindgen]
pub fn small_palette_index(text: &str, budget_ms: u32) -> Result<String, JsValue> {
    to_js(palette_index_json(text, budget_ms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windmill_shape() {
        let v = windmill_json(8, 2).unwrap();
        assert_eq!(v["graph"]["n"], 9);
        assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 16);
        assert!(windmill_json(5, 1).is_err());
    }

    #[test]
    fn coloring_has_forest_after_removal() {
        for seed in 0..20 {
            let v = random_coloring_json(6, 3, 9, seed).unwrap();
            assert_eq!(v["forest_without_central"], true);
            assert_eq!(v["palettes"].as_array().unwrap().len(), 7);
        }
        assert!(random_coloring_json(6, 3, 5, 0).is_err());
    }

    #[test]
    fn k5_palette_index() {
        let text = "5\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
        let v = palette_index_json(text, 5000).unwrap();
        assert_eq!(v["value"], 4);
        assert_eq!(v["exact"], true);
        assert!(palette_index_json("2\n0 1 31", 100).is_err());
        assert!(palette_index_json("2\n0 0", 100).is_err());
    }
}
