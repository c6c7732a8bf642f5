//! Closed-form bounds on the palette index.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Strict bounds `(Δ/2·(Δ-2), (Δ+1)(Δ-2))` on the palette index of `G^Δ`, even `Δ ≥ 4`.
pub fn gdelta_bounds(delta: usize) -> Result<(usize, usize)> {
    if delta < 4 || delta % 2 == 1 {
        return Err(Error::Family(format!("Δ = {delta} must be even and at least 4")));
    }
    Ok((delta / 2 * (delta - 2), (delta + 1) * (delta - 2)))
}

/// `2^(Δ+1) - 2`: every nonempty proper subset of a `(Δ+1)`-color set.
pub fn trivial_palette_upper_bound(delta: u32) -> u128 {
    assert!(delta < 127, "Δ too large for a 128-bit bound");
    (1u128 << (delta + 1)) - 2
}

/// `Δ² - Δ + 1`, the palette bound for multigraphs with an interval coloring.
pub fn interval_palette_bound(delta: usize) -> usize {
    delta * delta - delta + 1
}

/// Number of distinct vertex degrees; palettes of different sizes never coincide.
pub fn degree_diversity_lower_bound(g: &Multigraph) -> usize {
    g.degrees().into_iter().collect::<BTreeSet<_>>().len()
}
