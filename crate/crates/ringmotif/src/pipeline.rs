//! Load, reorder, decompose, lay out and render, writing every artifact to
//! one output directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ringmotif_core::layout::{Layout, RunReport};
use ringmotif_core::patterns::{CandidateSet, PatternKind};
use ringmotif_core::reorder::{build_instance, morans_i_simplified, reorder, ReorderMethod, Solver};
use ringmotif_core::select::{decompose, DecomposeConfig, Decomposition};
use ringmotif_core::{materialize, AdjacencyMatrix, Graph, Ordering};
use serde::Serialize;

use crate::config::{filter_name, model_name, PipelineConfig, ReorderMode};
use crate::error::{Error, Result};
use crate::export::{self, PrecisionJson, RunJson};
use crate::io;
use crate::svg;

/// Distances are written as integers after this scaling; the last city is
/// the zero-distance path endpoint.
const TSPLIB_SCALE: f64 = 1e6;

/// Everything computed for one graph.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: Graph,
    /// The graph in input order.
    pub input: AdjacencyMatrix,
    /// The matrix the decomposition indexes.
    pub matrix: AdjacencyMatrix,
    pub solver: Option<Solver>,
    pub warnings: Vec<String>,
    pub morans_before: Option<f64>,
    pub morans_after: Option<f64>,
    pub candidates: CandidateSet,
    pub decomposition: Decomposition,
    pub layout: Layout,
    pub run: RunReport,
    pub timings: Timings,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub reorder_ms: f64,
    pub decompose_ms: f64,
    pub layout_ms: f64,
    pub render_ms: f64,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn method(cfg: &PipelineConfig) -> Option<ReorderMethod> {
    match cfg.reorder {
        ReorderMode::Off => None,
        ReorderMode::Exact => Some(ReorderMethod::Exact { cap: cfg.exact_cap }),
        ReorderMode::Heuristic => Some(ReorderMethod::Heuristic { seed: cfg.seed }),
        ReorderMode::Auto => Some(ReorderMethod::Auto { cap: cfg.exact_cap, seed: cfg.seed }),
    }
}

/// Runs every computational stage on `graph`. A matrix that is entirely
/// black or white is kept in input order with a warning.
pub fn analyze(graph: Graph, cfg: &PipelineConfig) -> Result<Analysis> {
    cfg.validate()?;
    let input = materialize(&graph, &Ordering::identity(graph.n()))?;
    let mut warnings = Vec::new();
    let morans_before = morans_i_simplified(&input).ok();
    if morans_before.is_none() {
        warnings.push("matrix is all black or all white; Moran's I is undefined".to_string());
    }

    let t = Instant::now();
    let (matrix, solver) = match method(cfg) {
        Some(_) if morans_before.is_none() => {
            warnings.push("reordering skipped; keeping input order".to_string());
            (input.clone(), None)
        }
        Some(m) => {
            let r = reorder(&input, m)?;
            (r.matrix, Some(r.solver))
        }
        None => (input.clone(), None),
    };
    let reorder_ms = ms(t);
    let morans_after = morans_i_simplified(&matrix).ok();

    let t = Instant::now();
    let dc = DecomposeConfig { model: cfg.noise_model()?, filter: cfg.filter, axis: cfg.axis };
    let (decomposition, candidates) = decompose(&matrix, &dc)?;
    let decompose_ms = ms(t);

    let t = Instant::now();
    let mut layout = Layout::new(&decomposition.patterns);
    let run = layout.run(&cfg.forces);
    let layout_ms = ms(t);

    Ok(Analysis {
        graph,
        input,
        matrix,
        solver,
        warnings,
        morans_before,
        morans_after,
        candidates,
        decomposition,
        layout,
        run,
        timings: Timings { reorder_ms, decompose_ms, layout_ms, render_ms: 0.0 },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KindCounts {
    pub cliques: usize,
    pub bicliques: usize,
    pub stars: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReorderReport {
    pub mode: String,
    pub solver: Option<String>,
    pub morans_i_before: Option<f64>,
    pub morans_i_after: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsReport {
    pub model: String,
    pub sigma: f64,
    pub tau: f64,
    pub filter: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub vertices: usize,
    pub edges: usize,
    pub params: ParamsReport,
    pub reorder: ReorderReport,
    pub candidates: KindCounts,
    pub selected: KindCounts,
    pub total_weight: u64,
    pub precision: PrecisionJson,
    pub layout: RunJson,
    pub warnings: Vec<String>,
}

fn count_kinds(kinds: impl Iterator<Item = PatternKind>) -> KindCounts {
    let mut c = KindCounts { cliques: 0, bicliques: 0, stars: 0 };
    for k in kinds {
        match k {
            PatternKind::Clique => c.cliques += 1,
            PatternKind::Biclique => c.bicliques += 1,
            PatternKind::Star => c.stars += 1,
        }
    }
    c
}

impl Analysis {
    pub fn report(&self, cfg: &PipelineConfig) -> Report {
        Report {
            vertices: self.graph.n(),
            edges: self.graph.m(),
            params: ParamsReport {
                model: model_name(cfg.model).into(),
                sigma: cfg.sigma,
                tau: cfg.tau,
                filter: filter_name(cfg.filter),
                seed: cfg.seed,
            },
            reorder: ReorderReport {
                mode: cfg.reorder.as_str().into(),
                solver: self.solver.map(|s| match s {
                    Solver::Exact => "exact".to_string(),
                    Solver::Heuristic => "heuristic".to_string(),
                }),
                morans_i_before: self.morans_before,
                morans_i_after: self.morans_after,
            },
            candidates: count_kinds(self.candidates.iter().map(|p| p.kind())),
            selected: count_kinds(self.decomposition.patterns.iter().map(|p| p.kind())),
            total_weight: self.decomposition.total_weight,
            precision: self.decomposition.precision.into(),
            layout: self.run.into(),
            warnings: self.warnings.clone(),
        }
    }

    /// Vertex label at each position of the reordered matrix.
    pub fn labels(&self) -> Vec<String> {
        position_labels(&self.graph, &self.matrix)
    }
}

fn position_labels(g: &Graph, m: &AdjacencyMatrix) -> Vec<String> {
    m.ordering().as_slice().iter().map(|&v| g.label(v).to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub bytes: usize,
}

/// Files written by a run, relative to the output directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
    #[serde(skip)]
    pub dir: PathBuf,
}

impl Manifest {
    fn write(&mut self, name: &str, text: &str) -> Result<()> {
        io::write_text(&self.dir.join(name), text)?;
        self.files.push(ManifestEntry { file: name.to_string(), bytes: text.len() });
        Ok(())
    }

    pub fn paths(&self) -> Vec<PathBuf> {
        self.files.iter().map(|e| self.dir.join(&e.file)).collect()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_svgs(a: &Analysis, cfg: &PipelineConfig, manifest: &mut Manifest) -> Result<()> {
    let rc = &cfg.render;
    let labels = a.labels();
    let reordered = svg::render_matrix(&a.matrix, &labels, &a.decomposition.patterns, rc);
    let motifs = svg::render_motifs(&a.layout, &labels, rc);
    if cfg.emit.matrix {
        manifest.write("matrix.svg", &reordered.document())?;
    }
    if cfg.emit.motif {
        manifest.write("motif.svg", &motifs.document())?;
    }
    if cfg.emit.bar {
        manifest.write("bar.svg", &svg::render_precision_bar_svg(&a.decomposition.precision, rc).document())?;
    }
    if cfg.emit.composite {
        let input = svg::render_matrix(&a.input, &position_labels(&a.graph, &a.input), &[], rc);
        let bar = svg::render_precision_bar(&a.decomposition.precision, rc);
        manifest.write("composite.svg", &svg::composite(&input, &reordered, &bar, &motifs, rc).document())?;
    }
    Ok(())
}

/// Writes the artifacts of `a` into `cfg.out`. `report.json` and
/// `manifest.json` are always written.
pub fn write_artifacts(a: &mut Analysis, cfg: &PipelineConfig) -> Result<Manifest> {
    create_dir(&cfg.out)?;
    let mut manifest = Manifest { files: Vec::new(), dir: cfg.out.clone() };
    let t = Instant::now();
    write_svgs(a, cfg, &mut manifest)?;
    a.timings.render_ms = ms(t);
    if cfg.emit.json {
        let g = &a.graph;
        manifest.write("decomposition.json", &to_json(&export::decomposition_json(g, &a.matrix, &a.decomposition))?)?;
        manifest.write("candidates.json", &to_json(&export::candidates_json(g, &a.matrix, &a.candidates))?)?;
        manifest.write("layout.json", &to_json(&export::layout_json(g, &a.matrix, &a.layout, a.run))?)?;
    }
    if cfg.emit.tsplib {
        if let Ok(t) = build_instance(&a.input) {
            let text = io::format_tsplib("ringmotif", t.size(), |u, v| t.dist(u, v), TSPLIB_SCALE);
            manifest.write("instance.tsp", &text)?;
        }
    }
    manifest.write("report.json", &to_json(&a.report(cfg))?)?;
    if cfg.timings {
        manifest.write("timings.json", &to_json(&a.timings)?)?;
    }
    let listing = to_json(&manifest)?;
    io::write_text(&cfg.out.join("manifest.json"), &listing)?;
    Ok(manifest)
}

pub fn load_input(cfg: &PipelineConfig) -> Result<Graph> {
    let path = cfg.input.as_ref().ok_or_else(|| Error::Config("no input file given".into()))?;
    io::load_graph(path, cfg.format)
}

/// Full pipeline from `cfg.input` to files in `cfg.out`.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<(Analysis, Manifest)> {
    cfg.validate()?;
    let graph = load_input(cfg)?;
    let mut a = analyze(graph, cfg)?;
    let manifest = write_artifacts(&mut a, cfg)?;
    Ok((a, manifest))
}

/// Re-renders a stored decomposition of `cfg.input`: recomputes the layout
/// with the configured forces and writes the SVGs and `layout.json`.
pub fn render_stored(cfg: &PipelineConfig, decomposition: &Path) -> Result<Manifest> {
    cfg.validate()?;
    let graph = load_input(cfg)?;
    let doc: export::DecompositionJson = serde_json::from_str(&io::read_text(decomposition)?)?;
    let (matrix, d) = export::restore(&graph, &doc)?;
    let mut layout = Layout::new(&d.patterns);
    let run = layout.run(&cfg.forces);
    let input = materialize(&graph, &Ordering::identity(graph.n()))?;
    let a = Analysis {
        morans_before: morans_i_simplified(&input).ok(),
        morans_after: morans_i_simplified(&matrix).ok(),
        graph,
        input,
        matrix,
        solver: None,
        warnings: Vec::new(),
        candidates: CandidateSet::default(),
        decomposition: d,
        layout,
        run,
        timings: Timings::default(),
    };
    create_dir(&cfg.out)?;
    let mut manifest = Manifest { files: Vec::new(), dir: cfg.out.clone() };
    write_svgs(&a, cfg, &mut manifest)?;
    if cfg.emit.json {
        manifest.write("layout.json", &to_json(&export::layout_json(&a.graph, &a.matrix, &a.layout, a.run))?)?;
    }
    Ok(manifest)
}
