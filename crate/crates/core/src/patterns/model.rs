//! Noise models deciding whether a submatrix is a noisy pattern.

use crate::error::{Error, Result};

use super::{PatternKind, PrefixTables, Shape};

/// Slack for comparisons between integer counts and real thresholds, so
/// that e.g. `tau = 0.85` and `0.85 * 20 = 17` behave as written.
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Black cells / counted cells >= sigma.
    Density,
    /// Moran's I of the submatrix >= sigma.
    PlainMorans,
    /// Black-black adjacencies / internal adjacencies >= sigma.
    GlobalReweighted,
    /// At least a `tau` fraction of consecutive row (and column) pairs have
    /// more than `sigma * width` black-black adjacencies.
    LocalReweighted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub kind: ModelKind,
    pub sigma: f64,
    pub tau: f64,
}

impl NoiseModel {
    pub fn new(kind: ModelKind, sigma: f64, tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&sigma) {
            return Err(Error::InvalidParameter("sigma must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::InvalidParameter("tau must lie in [0, 1]"));
        }
        Ok(NoiseModel { kind, sigma, tau })
    }

    /// Locally reweighted model; panics on out-of-range thresholds.
    pub fn local(sigma: f64, tau: f64) -> Self {
        NoiseModel::new(ModelKind::LocalReweighted, sigma, tau).expect("thresholds in [0, 1]")
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::local(0.5, 0.85)
    }
}

/// Whether `shape` is a noisy pattern of its kind under `model`.
pub fn test_pattern(p: &PrefixTables, shape: &Shape, model: &NoiseModel) -> bool {
    debug_assert!(shape.is_valid(p.n()));
    let Shape { rows, cols, .. } = *shape;
    match model.kind {
        ModelKind::Density => {
            let black = p.black_in(rows.start, rows.end, cols.start, cols.end);
            black as f64 + EPS >= model.sigma * shape.cells_total() as f64
        }
        ModelKind::GlobalReweighted => {
            let total = shape.internal_adjacencies();
            let bb = p.vertical_bb_in(rows.start, rows.end, cols.start, cols.end)
                + p.horizontal_bb_in(rows.start, rows.end, cols.start, cols.end);
            total > 0 && bb as f64 + EPS >= model.sigma * total as f64
        }
        ModelKind::PlainMorans => submatrix_morans_i(p, shape) + EPS >= model.sigma,
        ModelKind::LocalReweighted => local(p, shape, model),
    }
}

fn local(p: &PrefixTables, shape: &Shape, model: &NoiseModel) -> bool {
    let Shape { kind, rows, cols } = *shape;
    let (sigma, tau) = (model.sigma, model.tau);
    match kind {
        PatternKind::Clique => {
            let width = sigma * rows.len() as f64;
            fraction_passes(rows.start..rows.end, tau, |u| {
                p.vertical_bb(u, cols.start, cols.end, true) as f64 > width + EPS
            })
        }
        PatternKind::Biclique => {
            let row_width = sigma * cols.len() as f64;
            let col_width = sigma * rows.len() as f64;
            fraction_passes(rows.start..rows.end, tau, |u| {
                p.vertical_bb(u, cols.start, cols.end, false) as f64 > row_width + EPS
            }) && fraction_passes(cols.start..cols.end, tau, |c| {
                p.horizontal_bb(c, rows.start, rows.end, false) as f64 > col_width + EPS
            })
        }
        PatternKind::Star => {
            // a star has no adjacent rows (or columns) across its short axis
            if rows.len() == 1 {
                fraction_passes(cols.start..cols.end, tau, |c| {
                    p.horizontal_bb(c, rows.start, rows.end, false) as f64 > sigma + EPS
                })
            } else {
                fraction_passes(rows.start..rows.end, tau, |u| {
                    p.vertical_bb(u, cols.start, cols.end, false) as f64 > sigma + EPS
                })
            }
        }
    }
}

/// Whether at least `tau * len` of the indices in `range` satisfy `ok`,
/// stopping as soon as the answer is known.
fn fraction_passes(range: core::ops::Range<usize>, tau: f64, mut ok: impl FnMut(usize) -> bool) -> bool {
    let total = range.len();
    let need = libm::ceil(tau * total as f64 - EPS).max(0.0) as usize;
    let allowed_failures = total.saturating_sub(need);
    let (mut passed, mut failed) = (0, 0);
    for i in range {
        if passed >= need {
            return true;
        }
        if ok(i) {
            passed += 1;
        } else {
            failed += 1;
            if failed > allowed_failures {
                return false;
            }
        }
    }
    passed >= need
}

/// Moran's I of the counted cells of `shape` under rook adjacency. Uniform
/// submatrices (all black or all white) are perfectly autocorrelated and
/// score 1.
pub(crate) fn submatrix_morans_i(p: &PrefixTables, shape: &Shape) -> f64 {
    let Shape { kind, rows, cols } = *shape;
    let (r0, r1, c0, c1) = (rows.start, rows.end, cols.start, cols.end);
    let (h, w) = (rows.len() as u64, cols.len() as u64);
    let black = p.black_in(r0, r1, c0, c1);
    let vbb = p.vertical_bb_in(r0, r1, c0, c1);
    let hbb = p.horizontal_bb_in(r0, r1, c0, c1);

    // white-white pairs = pairs - pairs with at least one black cell
    let v_touching = if h > 1 { p.black_in(r0, r1 - 1, c0, c1) + p.black_in(r0 + 1, r1, c0, c1) - vbb } else { 0 };
    let h_touching = if w > 1 { p.black_in(r0, r1, c0, c1 - 1) + p.black_in(r0, r1, c0 + 1, c1) - hbb } else { 0 };
    let mut ww = (h - 1) * w - v_touching + h * (w - 1) - h_touching;
    if kind == PatternKind::Clique {
        // drop pairs touching the (white) diagonal; each superdiagonal cell
        // and its mirror sits in two such pairs
        let near_white = 2 * (h - 1) - 2 * p.superdiagonal_black(r0, r1);
        ww -= 2 * near_white;
    }

    let cells = shape.cells_total();
    let pairs = shape.internal_adjacencies();
    if black == 0 || black == cells || pairs == 0 {
        return 1.0;
    }
    let (n, a) = (cells as f64, pairs as f64);
    let bb = (vbb + hbb) as f64;
    n / a * (bb / black as f64 + ww as f64 / (n - black as f64)) - 1.0
}
