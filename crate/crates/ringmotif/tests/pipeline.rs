use std::path::PathBuf;

use ringmotif::config::{PipelineConfig, ReorderMode};
use ringmotif::io::{load_graph, InputFormat};
use ringmotif::pipeline::analyze;
use ringmotif::synth::{generate, Plant, SynthSpec};
use ringmotif_core::patterns::PatternKind;
use ringmotif_core::{AdjacencyMatrix, Graph};

fn karate() -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/karate.txt");
    load_graph(&path, InputFormat::Edges).unwrap()
}

/// Moran's I from its definition with rook adjacency on the full matrix.
fn morans_oracle(m: &AdjacencyMatrix) -> f64 {
    let n = m.n();
    let x = |i: usize, j: usize| if m.get(i, j) { 1.0 } else { 0.0 };
    let mean = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| x(i, j)).sum::<f64>() / (n * n) as f64;
    let mut num = 0.0;
    let mut w = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        for j in 0..n {
            den += (x(i, j) - mean).powi(2);
            for (a, b) in [(i + 1, j), (i, j + 1)] {
                if a < n && b < n {
                    num += 2.0 * (x(i, j) - mean) * (x(a, b) - mean);
                    w += 2.0;
                }
            }
        }
    }
    (n * n) as f64 / w * num / den
}

#[test]
fn karate_club_has_clique_and_biclique() {
    let cfg = PipelineConfig { sigma: 0.5, tau: 0.95, ..PipelineConfig::default() };
    let a = analyze(karate(), &cfg).unwrap();
    let kinds: Vec<PatternKind> = a.decomposition.patterns.iter().map(|p| p.kind()).collect();
    assert!(kinds.contains(&PatternKind::Clique));
    assert!(kinds.contains(&PatternKind::Biclique));
    let report = a.report(&cfg);
    assert_eq!(report.precision.black_in + report.precision.black_out, 2 * 78);
    assert_eq!(
        report.precision.white_out + report.precision.white_in + report.precision.black_in + report.precision.black_out,
        34 * 33
    );
}

#[test]
fn reordering_never_lowers_morans_i() {
    let mut graphs = vec![karate()];
    for seed in 0..6 {
        let spec = SynthSpec {
            n: 30,
            plants: vec![Plant::Clique { size: 7 }, Plant::Biclique { rows: 4, cols: 6 }],
            flip: 0.1,
            background: 0.05,
            shuffle: true,
        };
        graphs.push(generate(&spec, seed).unwrap().graph);
    }
    for g in graphs {
        let off = analyze(g.clone(), &PipelineConfig { reorder: ReorderMode::Off, ..Default::default() }).unwrap();
        let on = analyze(g, &PipelineConfig::default()).unwrap();
        let (before, after) = (on.morans_before.unwrap(), on.morans_after.unwrap());
        assert_eq!(off.morans_after.unwrap(), before);
        assert!(after >= before - 1e-12, "{after} < {before}");
    }
}

#[test]
fn report_morans_i_matches_definition() {
    let a = analyze(karate(), &PipelineConfig::default()).unwrap();
    for (value, m) in [(a.morans_before, &a.input), (a.morans_after, &a.matrix)] {
        let oracle = morans_oracle(m);
        assert!((value.unwrap() - oracle).abs() < 1e-9 * oracle.abs().max(1.0));
    }
}

#[test]
fn degenerate_input_keeps_order() {
    let g = Graph::with_numeric_labels(5, []).unwrap();
    let a = analyze(g, &PipelineConfig::default()).unwrap();
    assert!(a.solver.is_none());
    assert!(!a.warnings.is_empty());
    assert!(a.decomposition.patterns.is_empty());
    assert_eq!(a.decomposition.precision.white_out, 20);
}

#[test]
fn planted_flip_rate_within_binomial_bounds() {
    let spec = SynthSpec {
        n: 40,
        plants: vec![Plant::Clique { size: 8 }, Plant::Biclique { rows: 3, cols: 5 }, Plant::Star { leaves: 6 }],
        flip: 0.1,
        background: 0.02,
        shuffle: true,
    };
    let (mut cells, mut missing) = (0u64, 0u64);
    for seed in 0..100 {
        let s = generate(&spec, seed).unwrap();
        for t in &s.truth {
            let ids = |v: &Vec<String>| v.iter().map(|l| l.parse::<usize>().unwrap() - 1).collect::<Vec<_>>();
            let (rows, cols) = (ids(&t.rows), ids(&t.cols));
            let mut absent = 0;
            if t.kind == "clique" {
                for x in 0..rows.len() {
                    for y in x + 1..rows.len() {
                        absent += u64::from(!s.graph.has_edge(rows[x], rows[y]));
                    }
                }
            } else {
                for &u in &rows {
                    for &v in &cols {
                        absent += u64::from(!s.graph.has_edge(u, v));
                    }
                }
            }
            assert_eq!(absent, t.missing_cells);
            cells += t.planted_cells;
            missing += absent;
        }
    }
    let (n, p) = (cells as f64, spec.flip);
    let sd = (n * p * (1.0 - p)).sqrt();
    assert!((missing as f64 - n * p).abs() <= 3.0 * sd, "{missing} of {cells}");
}
