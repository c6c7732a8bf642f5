//! Text formats for multigraphs, colorings and bipartite color matrices, plus
//! DOT export and a small key/value report.
//!
//! Multigraph file:
//!
//! ```text
//! # comments start with '#'
//! 3
//! 0 1 2
//! 1 2
//! name 0 hub
//! ```
//!
//! The first data line is the vertex count. Each edge line is `u v` with an
//! optional multiplicity; parallel copies get consecutive edge ids.
//! `name <v> <label>` attaches a label to a vertex.
//!
//! Coloring file: a `k <colors>` line, then one `edge color` line per edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::families::complete_bipartite;
use crate::multigraph::{EdgeSpec, Multigraph, VertexId};
use crate::palette_graph::PaletteMultigraph;

/// A parsed multigraph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Multigraph,
    pub names: BTreeMap<VertexId, String>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, got {tok:?}")))
}

pub fn parse_multigraph_file(text: &str) -> Result<GraphFile> {
    let mut lines = data_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = number(line, head)?;
    let mut specs = Vec::new();
    let mut names = BTreeMap::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "name" {
            let [_, v, label @ ..] = toks.as_slice() else { unreachable!() };
            let v: usize = number(line, v)?;
            if v >= n || label.is_empty() {
                return Err(parse_err(line, "name needs a vertex in range and a label"));
            }
            names.insert(v, label.join(" "));
            continue;
        }
        let spec = match toks.as_slice() {
            [u, v] => EdgeSpec::new(number(line, u)?, number(line, v)?, 1),
            [u, v, m] => EdgeSpec::new(number(line, u)?, number(line, v)?, number(line, m)?),
            _ => return Err(parse_err(line, "expected `u v [multiplicity]`")),
        };
        if spec.u >= n || spec.v >= n || spec.u == spec.v || spec.multiplicity == 0 {
            let err = Multigraph::build(n, [spec]).unwrap_err();
            return Err(parse_err(line, err.to_string()));
        }
        specs.push(spec);
    }
    Ok(GraphFile { graph: Multigraph::build(n, specs)?, names })
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    Ok(parse_multigraph_file(text)?.graph)
}

/// Canonical form: runs of parallel copies with consecutive ids collapse to one line.
pub fn serialize_multigraph(g: &Multigraph) -> String {
    serialize_multigraph_file(&GraphFile { graph: g.clone(), names: BTreeMap::new() })
}

pub fn serialize_multigraph_file(f: &GraphFile) -> String {
    let mut out = format!("{}\n", f.graph.vertex_count());
    let edges = f.graph.edges();
    let mut i = 0;
    while i < edges.len() {
        let run = edges[i..].iter().take_while(|&&e| e == edges[i]).count();
        let (u, v) = edges[i];
        if run == 1 {
            let _ = writeln!(out, "{u} {v}");
        } else {
            let _ = writeln!(out, "{u} {v} {run}");
        }
        i += run;
    }
    for (v, name) in &f.names {
        let _ = writeln!(out, "name {v} {name}");
    }
    out
}

/// Reads a coloring of `g`; every edge must be listed exactly once.
pub fn parse_coloring(text: &str, g: &Multigraph) -> Result<EdgeColoring> {
    let mut lines = data_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "missing `k` line"))?;
    let k: u32 = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["k", k] => number(line, k)?,
        _ => return Err(parse_err(line, "expected `k <colors>`")),
    };
    let mut colors = vec![None; g.edge_count()];
    for (line, l) in lines {
        let (e, c): (usize, u32) = match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            [e, c] => (number(line, e)?, number(line, c)?),
            _ => return Err(parse_err(line, "expected `edge color`")),
        };
        if e >= g.edge_count() {
            return Err(parse_err(line, format!("edge {e} does not exist; the graph has {} edges", g.edge_count())));
        }
        if c >= k {
            return Err(parse_err(line, format!("color {c} is not below k = {k}")));
        }
        if colors[e].replace(c).is_some() {
            return Err(parse_err(line, format!("edge {e} colored twice")));
        }
    }
    EdgeColoring::from_partial(k, &colors)
}

pub fn serialize_coloring(c: &EdgeColoring) -> String {
    let mut out = format!("k {}\n", c.k());
    for (e, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{e} {col}");
    }
    out
}

/// Reads a 1-based color matrix: entry `(i, j)` colors edge `u_i v_j` of `K_{m,n}`.
/// Colors are shifted to 0-based; `k` is the largest entry.
pub fn parse_color_matrix(text: &str) -> Result<(Multigraph, EdgeColoring)> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (line, l) in data_lines(text) {
        let row = l
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(|t| number::<u32>(line, t))
            .collect::<Result<Vec<_>>>()?;
        if row.contains(&0) {
            return Err(parse_err(line, "matrix entries start at 1"));
        }
        if rows.first().is_some_and(|r| r.len() != row.len()) {
            return Err(parse_err(line, "matrix is not rectangular"));
        }
        rows.push(row);
    }
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(parse_err(1, "empty matrix"));
    }
    for i in 0..m {
        for j in 0..n {
            let c = rows[i][j];
            if rows[i][..j].contains(&c) || rows[..i].iter().any(|r| r[j] == c) {
                return Err(Error::MatrixRepeat { row: i + 1, col: j + 1, color: c });
            }
        }
    }
    let g = complete_bipartite(m, n)?;
    let k = rows.iter().flatten().copied().max().unwrap_or(0);
    let colors = rows.into_iter().flatten().map(|c| c - 1).collect();
    Ok((g, EdgeColoring::new(k, colors)?))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One statement per vertex and one per edge, parallel copies included.
pub fn export_dot(g: &Multigraph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match coloring {
            Some(c) if e < c.len() => {
                let _ = writeln!(out, "  {u} -- {v} [label=\"{}\"];", c.color(e));
            }
            _ => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Palette multigraph in DOT; nodes are labeled by their palettes, loops included.
pub fn export_palette_dot(gamma: &PaletteMultigraph) -> String {
    let mut out = String::from("graph Gamma {\n");
    for (i, p) in gamma.palettes().iter().enumerate() {
        let _ = writeln!(out, "  p{i} [label=\"{}\"];", dot_escape(&p.to_string()));
    }
    for &(a, b) in gamma.edge_indices() {
        let _ = writeln!(out, "  p{a} -- p{b};");
    }
    out.push_str("}\n");
    out
}

/// Ordered key/value report rendered as `key value` lines or as JSON.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Serialize) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.entries.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// One `key value` line per entry; strings are written bare, everything else as JSON.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k} {s}");
                }
                other => {
                    let _ = writeln!(out, "{k} {other}");
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self.entries.iter().cloned().collect();
        Value::Object(map)
    }
}

/// Parses `key value` lines back into pairs; values stay as raw text.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| {
            let l = l.trim();
            if l.is_empty() {
                return None;
            }
            let (k, v) = l.split_once(' ').unwrap_or((l, ""));
            Some((k.to_string(), v.trim().to_string()))
        })
        .collect()
}
