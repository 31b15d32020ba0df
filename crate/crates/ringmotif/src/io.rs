//! Edge-list and matrix text formats.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ringmotif_core::{AdjacencyMatrix, Graph};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    /// One `u v` pair per line; `#` starts a comment line.
    #[default]
    Edges,
    /// `n` rows of `0`/`1`; whitespace inside a row is ignored.
    Matrix,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(InputFormat::Edges),
            "matrix" => Ok(InputFormat::Matrix),
            _ => Err(Error::Config(format!("unknown format '{s}' (expected edges or matrix)"))),
        }
    }
}

/// Parses an edge list. Vertices are numbered in order of first appearance
/// and keep their tokens as labels. Repeated edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(k + 1, format!("expected two vertex labels, found {}", tokens.len())));
        }
        if tokens[0] == tokens[1] {
            return Err(Error::parse(k + 1, format!("self-loop on vertex '{}'", tokens[0])));
        }
        let u = intern(&mut index, &mut labels, tokens[0]);
        let v = intern(&mut index, &mut labels, tokens[1]);
        edges.push((u, v));
    }
    Ok(Graph::new(labels, edges)?)
}

fn intern<'a>(index: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>, t: &'a str) -> usize {
    *index.entry(t).or_insert_with(|| {
        labels.push(t.to_string());
        labels.len() - 1
    })
}

/// Parses a 0/1 matrix. Blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<AdjacencyMatrix> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let mut row = Vec::new();
        for ch in raw.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                _ => return Err(Error::parse(k + 1, format!("unexpected character '{ch}'"))),
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(AdjacencyMatrix::from_cells(&rows)?)
}

pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph> {
    match format {
        InputFormat::Edges => parse_edge_list(text),
        InputFormat::Matrix => Ok(parse_matrix(text)?.to_graph()),
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: &Path, format: InputFormat) -> Result<Graph> {
    parse_graph(&read_text(path)?, format)
}

/// `g` as a matrix in vertex order, which keeps isolated vertices.
pub fn format_matrix(g: &Graph) -> Result<String> {
    let m = ringmotif_core::materialize(g, &ringmotif_core::Ordering::identity(g.n()))?;
    Ok(m.to_string())
}

/// Edge list with one `label label` line per edge, sorted by vertex index.
/// Isolated vertices are lost; use the matrix format to keep them.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

/// TSPLIB `FULL_MATRIX` instance with distances scaled to integers.
pub fn format_tsplib(name: &str, size: usize, dist: impl Fn(usize, usize) -> f64, scale: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME: {name}");
    let _ = writeln!(out, "TYPE: TSP");
    let _ = writeln!(out, "DIMENSION: {size}");
    let _ = writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT");
    let _ = writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX");
    let _ = writeln!(out, "EDGE_WEIGHT_SECTION");
    for u in 0..size {
        let row: Vec<String> = (0..size).map(|v| format!("{}", (dist(u, v) * scale).round() as i64)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out.push_str("EOF\n");
    out
}
