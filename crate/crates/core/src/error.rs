use thiserror::Error;

/// Errors produced by graph construction, coloring checks and the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge spec {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge spec {index} references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge spec {index} has multiplicity 0")]
    ZeroMultiplicity { index: usize },
    #[error("disjoint union of an empty list")]
    EmptyUnion,
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    ColoringLength { expected: usize, got: usize },
    #[error("edges {0:?} are uncolored")]
    Uncolored(Vec<usize>),
    #[error("edge {edge} has color {color} outside the universe 0..{k}")]
    ColorOutOfRange { edge: usize, color: u32, k: u32 },
    #[error("coloring is not proper: edges {0} and {1} share vertex {2} and color {3}")]
    Improper(usize, usize, usize, u32),
    #[error("color map is not a bijection on 0..{0}")]
    NotAPermutation(u32),
    #[error("palette {0} is not a vertex of the palette multigraph")]
    UnknownPalette(String),
    #[error("average degree of an empty palette multigraph")]
    EmptyPaletteGraph,
    #[error("invalid family parameters: {0}")]
    Family(String),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("{k} colors is below the chromatic index {chromatic_index}")]
    BelowChromaticIndex { k: u32, chromatic_index: u32 },
    #[error("color budget {0} exceeds the solver limit of {max}", max = crate::solver::MAX_COLORS)]
    TooManyColors(u32),
    #[error("palette index is not exact; search was cut short")]
    Inexact,
    #[error("component metadata does not match the graph: {0}")]
    Components(String),
    #[error("color {color} repeats at row {row}, column {col} of the matrix")]
    MatrixRepeat { row: usize, col: usize, color: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
