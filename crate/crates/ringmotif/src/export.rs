//! JSON documents written by the pipeline and read back by the renderer.

use ringmotif_core::layout::{boundary_map, GlyphShape, Layout, RunReport, StopReason};
use ringmotif_core::patterns::{CandidateSet, Pattern, PatternKind, PrefixTables, Shape, Span};
use ringmotif_core::select::{Decomposition, PrecisionCounts};
use ringmotif_core::{AdjacencyMatrix, Graph, Ordering};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternJson {
    pub kind: String,
    /// Inclusive position range in the reordered matrix.
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub weight: u64,
    pub cells_total: u64,
    pub cells_black: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    /// Labels of the pattern's vertices.
    #[serde(default)]
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionJson {
    pub white_out: u64,
    pub white_in: u64,
    pub black_in: u64,
    pub black_out: u64,
}

impl From<PrecisionCounts> for PrecisionJson {
    fn from(p: PrecisionCounts) -> Self {
        PrecisionJson { white_out: p.white_out, white_in: p.white_in, black_in: p.black_in, black_out: p.black_out }
    }
}

impl From<PrecisionJson> for PrecisionCounts {
    fn from(p: PrecisionJson) -> Self {
        PrecisionCounts { white_out: p.white_out, white_in: p.white_in, black_in: p.black_in, black_out: p.black_out }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub matrix_n: usize,
    /// Vertex label at each matrix position.
    pub ordering: Vec<String>,
    pub total_weight: u64,
    pub patterns: Vec<PatternJson>,
    pub precision: PrecisionJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidatesJson {
    pub cliques: Vec<PatternJson>,
    pub bicliques: Vec<PatternJson>,
    pub stars: Vec<PatternJson>,
}

fn position_labels(g: &Graph, m: &AdjacencyMatrix) -> Vec<String> {
    m.ordering().as_slice().iter().map(|&v| g.label(v).to_string()).collect()
}

pub fn pattern_json(g: &Graph, m: &AdjacencyMatrix, p: &Pattern, color: Option<&str>) -> PatternJson {
    let mut vertices = p.shape.vertices();
    vertices.sort_unstable();
    PatternJson {
        kind: p.kind().as_str().to_string(),
        rows: [p.rows().start, p.rows().end],
        cols: [p.cols().start, p.cols().end],
        weight: p.weight,
        cells_total: p.cells_total,
        cells_black: p.cells_black,
        color: color.map(str::to_string),
        vertices: vertices.into_iter().map(|i| g.label(m.ordering().vertex(i)).to_string()).collect(),
    }
}

/// `m` must be `g` materialized in some ordering; patterns index `m`.
pub fn decomposition_json(g: &Graph, m: &AdjacencyMatrix, d: &Decomposition) -> DecompositionJson {
    let layout_colors = (0..d.patterns.len()).map(ringmotif_core::layout::palette_color);
    DecompositionJson {
        matrix_n: m.n(),
        ordering: position_labels(g, m),
        total_weight: d.total_weight,
        patterns: d.patterns.iter().zip(layout_colors).map(|(p, c)| pattern_json(g, m, p, Some(c))).collect(),
        precision: d.precision.into(),
    }
}

pub fn candidates_json(g: &Graph, m: &AdjacencyMatrix, c: &CandidateSet) -> CandidatesJson {
    let list = |ps: &[Pattern]| ps.iter().map(|p| pattern_json(g, m, p, None)).collect();
    CandidatesJson { cliques: list(&c.cliques), bicliques: list(&c.bicliques), stars: list(&c.stars) }
}

fn parse_kind(s: &str) -> Result<PatternKind> {
    match s {
        "clique" => Ok(PatternKind::Clique),
        "biclique" => Ok(PatternKind::Biclique),
        "star" => Ok(PatternKind::Star),
        _ => Err(Error::Config(format!("unknown pattern kind '{s}'"))),
    }
}

/// Rebuilds the reordered matrix and the decomposition from a document and
/// the graph it was computed on. Pattern statistics are recomputed and must
/// agree with the document.
pub fn restore(g: &Graph, doc: &DecompositionJson) -> Result<(AdjacencyMatrix, Decomposition)> {
    if doc.matrix_n != g.n() || doc.ordering.len() != g.n() {
        return Err(Error::Config(format!(
            "decomposition is for {} vertices, graph has {}",
            doc.matrix_n,
            g.n()
        )));
    }
    let index: std::collections::HashMap<&str, usize> =
        g.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let perm = doc
        .ordering
        .iter()
        .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::Config(format!("unknown vertex '{l}'"))))
        .collect::<Result<Vec<_>>>()?;
    let m = ringmotif_core::materialize(g, &Ordering::new(perm)?)?;
    let tables = PrefixTables::new(&m);
    let mut patterns = Vec::with_capacity(doc.patterns.len());
    for pj in &doc.patterns {
        let shape = Shape {
            kind: parse_kind(&pj.kind)?,
            rows: Span::new(pj.rows[0], pj.rows[1]),
            cols: Span::new(pj.cols[0], pj.cols[1]),
        };
        if pj.rows[0] > pj.rows[1] || pj.cols[0] > pj.cols[1] || !shape.is_valid(m.n()) {
            return Err(Error::Config(format!("invalid {} at rows {:?} cols {:?}", pj.kind, pj.rows, pj.cols)));
        }
        let p = Pattern::measure(&tables, shape);
        if (p.weight, p.cells_total, p.cells_black) != (pj.weight, pj.cells_total, pj.cells_black) {
            return Err(Error::Config(format!(
                "{} at rows {:?} cols {:?} does not match the graph",
                pj.kind, pj.rows, pj.cols
            )));
        }
        patterns.push(p);
    }
    let precision = ringmotif_core::select::precision(&m, &patterns);
    let total_weight = patterns.iter().map(|p| p.weight).sum();
    Ok((m, Decomposition { patterns, total_weight, precision }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeometryJson {
    Annulus { outer_r: f64, inner_r: f64 },
    DiamondAnnulus { outer_side: f64, inner_side: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentJson {
    pub vertex: String,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlyphJson {
    pub pattern: usize,
    pub kind: String,
    pub color: String,
    pub center: [f64; 2],
    pub start: [f64; 2],
    pub rotation: f64,
    pub geometry: GeometryJson,
    pub boundary: Vec<SegmentJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkJson {
    pub clique: usize,
    pub rect: usize,
    pub shared: Vec<String>,
    pub clique_range: [f64; 2],
    pub rect_range: [f64; 2],
    pub polygon: [[f64; 2]; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunJson {
    pub iterations: usize,
    pub converged: bool,
    pub displacement: f64,
}

impl From<RunReport> for RunJson {
    fn from(r: RunReport) -> Self {
        RunJson { iterations: r.iterations, converged: r.stop == StopReason::Converged, displacement: r.displacement }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub glyphs: Vec<GlyphJson>,
    pub links: Vec<LinkJson>,
    pub run: RunJson,
}

pub fn layout_json(g: &Graph, m: &AdjacencyMatrix, layout: &Layout, run: RunReport) -> LayoutJson {
    let label = |i: usize| g.label(m.ordering().vertex(i)).to_string();
    let glyphs = layout
        .glyphs
        .iter()
        .enumerate()
        .map(|(i, gl)| GlyphJson {
            pattern: i,
            kind: gl.kind().as_str().to_string(),
            color: gl.color.to_string(),
            center: [gl.center.x, gl.center.y],
            start: [gl.start.x, gl.start.y],
            rotation: gl.rotation,
            geometry: match gl.shape {
                GlyphShape::Annulus { outer_r, inner_r } => GeometryJson::Annulus { outer_r, inner_r },
                GlyphShape::DiamondAnnulus { outer_side, inner_side } => {
                    GeometryJson::DiamondAnnulus { outer_side, inner_side }
                }
            },
            boundary: boundary_map(gl)
                .into_iter()
                .map(|s| SegmentJson { vertex: label(s.vertex), start: s.start, end: s.end })
                .collect(),
        })
        .collect();
    let links = layout
        .links
        .iter()
        .map(|l| LinkJson {
            clique: l.clique,
            rect: l.rect,
            shared: l.shared.iter().map(|&v| label(v)).collect(),
            clique_range: [l.clique_range.0, l.clique_range.1],
            rect_range: [l.rect_range.0, l.rect_range.1],
            polygon: l.polygon(&layout.glyphs).map(|p| [p.x, p.y]),
        })
        .collect();
    LayoutJson { glyphs, links, run: run.into() }
}
