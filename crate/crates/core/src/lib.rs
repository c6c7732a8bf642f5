//! Edge colorings of loopless multigraphs: palettes, palette multigraphs and
//! exact palette-index search.

pub mod coloring;
pub mod error;
pub mod families;
pub mod interval;
pub mod io;
pub mod multigraph;
pub mod palette_graph;
pub mod solver;

pub use coloring::{Color, EdgeColoring, Palette};
pub use error::{Error, Result};
pub use multigraph::{disjoint_union, EdgeId, EdgeSpec, Multigraph, VertexId};
pub use palette_graph::PaletteMultigraph;
pub use solver::SearchConfig;
