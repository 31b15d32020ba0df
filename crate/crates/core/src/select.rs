//! Choosing a maximal set of disjoint, high-weight patterns.
//!
//! Cliques sit on the diagonal, so two of them conflict exactly when their
//! intervals overlap; the best clique set is a maximum weight independent
//! set of intervals, found by dynamic programming. Bicliques and stars are
//! then added greedily by descending weight.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::patterns::{enumerate_all, AxisPreference, CandidateSet, NoiseModel, Pattern, PatternKind, PrefixTables, Span};

/// Skips small bicliques and stars relative to what is already selected.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub enum FilterRule {
    #[default]
    None,
    /// Require at least this weight.
    Absolute(u64),
    /// Require at least this fraction of the heaviest selected pattern.
    Relative(f64),
}

impl FilterRule {
    pub fn validate(self) -> Result<Self> {
        match self {
            FilterRule::Relative(f) if !(f > 0.0 && f < 1.0) => {
                Err(Error::InvalidParameter("relative filter must lie in (0, 1)"))
            }
            rule => Ok(rule),
        }
    }

    pub fn admits(self, weight: u64, heaviest: u64) -> bool {
        match self {
            FilterRule::None => true,
            FilterRule::Absolute(min) => weight >= min,
            FilterRule::Relative(f) => weight as f64 >= f * heaviest as f64,
        }
    }
}

/// Classification of every off-diagonal cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PrecisionCounts {
    pub white_out: u64,
    pub white_in: u64,
    pub black_in: u64,
    pub black_out: u64,
}

impl PrecisionCounts {
    pub fn total(&self) -> u64 {
        self.white_out + self.white_in + self.black_in + self.black_out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Selected cliques in interval order, then bicliques and stars in the
    /// order they were added.
    pub patterns: Vec<Pattern>,
    pub total_weight: u64,
    pub precision: PrecisionCounts,
}

impl Decomposition {
    /// A candidate that could still be added without overlap, if any.
    /// Bicliques and stars are only considered if `rule` admits them against
    /// the heaviest selected pattern.
    pub fn addable_candidate(&self, candidates: &CandidateSet, rule: FilterRule) -> Option<Pattern> {
        let heaviest = self.patterns.iter().map(|p| p.weight).max().unwrap_or(0);
        let rects = candidates.bicliques.iter().chain(&candidates.stars);
        candidates
            .cliques
            .iter()
            .chain(rects.filter(|q| rule.admits(q.weight, heaviest)))
            .find(|q| self.patterns.iter().all(|p| disjoint(p, q)))
            .copied()
    }
}

/// Rectangles of cells a pattern occupies: a clique its diagonal block,
/// a biclique or star its submatrix and mirror.
fn footprint(p: &Pattern) -> [(Span, Span); 2] {
    let (r, c) = (p.rows(), p.cols());
    [(r, c), (c, r)]
}

pub fn disjoint(p: &Pattern, q: &Pattern) -> bool {
    footprint(p).iter().all(|&(pr, pc)| {
        footprint(q).iter().all(|&(qr, qc)| !(pr.overlaps(qr) && pc.overlaps(qc)))
    })
}

/// Maximum total weight set of non-overlapping clique intervals. Among
/// optimal sets, the one whose sorted interval list is lexicographically
/// smallest is returned.
pub fn select_cliques(candidates: &[Pattern]) -> Vec<Pattern> {
    let mut sorted: Vec<Pattern> = candidates.to_vec();
    sorted.sort_by_key(|p| (p.rows().start, p.rows().end));
    let k = sorted.len();
    // next[a]: first interval starting after interval a ends
    let next: Vec<usize> = sorted
        .iter()
        .map(|p| sorted.partition_point(|q| q.rows().start <= p.rows().end))
        .collect();
    // best[a]: optimum over intervals a.. (suffix of the start order)
    let mut best = vec![0u64; k + 1];
    for a in (0..k).rev() {
        best[a] = best[a + 1].max(sorted[a].weight + best[next[a]]);
    }
    let mut chosen = Vec::new();
    let mut a = 0;
    while a < k {
        if sorted[a].weight + best[next[a]] == best[a] {
            chosen.push(sorted[a]);
            a = next[a];
        } else {
            a += 1;
        }
    }
    chosen
}

/// Adds bicliques and stars to `selected`, heaviest first, skipping any that
/// overlap a member or fail `rule` against the heaviest member so far.
pub fn select_rect(candidates: &[Pattern], mut selected: Vec<Pattern>, rule: FilterRule) -> Vec<Pattern> {
    let mut order: Vec<&Pattern> = candidates.iter().collect();
    order.sort_by_key(|p| {
        let s = p.shape;
        (core::cmp::Reverse(p.weight), s.rows.start, s.cols.start, s.rows.end, s.cols.end, s.kind)
    });
    let mut heaviest = selected.iter().map(|p| p.weight).max().unwrap_or(0);
    for p in order {
        if !rule.admits(p.weight, heaviest) {
            continue;
        }
        if selected.iter().all(|q| disjoint(p, q)) {
            heaviest = heaviest.max(p.weight);
            selected.push(*p);
        }
    }
    selected
}

pub fn precision(m: &AdjacencyMatrix, patterns: &[Pattern]) -> PrecisionCounts {
    let n = m.n();
    let mut covered = vec![false; n * n];
    for p in patterns {
        let rects = footprint(p);
        let rects = if p.kind() == PatternKind::Clique { &rects[..1] } else { &rects[..] };
        for &(rows, cols) in rects {
            for r in rows.iter() {
                covered[r * n + cols.start..=r * n + cols.end].fill(true);
            }
        }
    }
    let mut counts = PrecisionCounts::default();
    for r in 0..n {
        for c in (0..n).filter(|&c| c != r) {
            let slot = match (m.get(r, c), covered[r * n + c]) {
                (true, true) => &mut counts.black_in,
                (true, false) => &mut counts.black_out,
                (false, true) => &mut counts.white_in,
                (false, false) => &mut counts.white_out,
            };
            *slot += 1;
        }
    }
    counts
}

/// Selects a decomposition from an already enumerated candidate set.
pub fn select(m: &AdjacencyMatrix, candidates: &CandidateSet, rule: FilterRule) -> Result<Decomposition> {
    let rule = rule.validate()?;
    let cliques = select_cliques(&candidates.cliques);
    let rects: Vec<Pattern> = candidates.bicliques.iter().chain(&candidates.stars).copied().collect();
    let patterns = select_rect(&rects, cliques, rule);
    debug_assert!(patterns
        .iter()
        .enumerate()
        .all(|(a, p)| patterns[a + 1..].iter().all(|q| disjoint(p, q))));
    Ok(Decomposition {
        total_weight: patterns.iter().map(|p| p.weight).sum(),
        precision: precision(m, &patterns),
        patterns,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DecomposeConfig {
    pub model: NoiseModel,
    pub filter: FilterRule,
    pub axis: AxisPreference,
}

/// Enumerates candidates in `m`'s current order and selects from them.
pub fn decompose(m: &AdjacencyMatrix, cfg: &DecomposeConfig) -> Result<(Decomposition, CandidateSet)> {
    let tables = PrefixTables::new(m);
    let candidates = enumerate_all(&tables, &cfg.model, cfg.axis);
    let d = select(m, &candidates, cfg.filter)?;
    Ok((d, candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{materialize, Graph, Ordering};
    use crate::patterns::Shape;
    use alloc::collections::BTreeSet;
    use rand::{Rng, SeedableRng};

    fn clique(i: usize, j: usize, weight: u64) -> Pattern {
        let shape = Shape::clique(i, j);
        Pattern { shape, weight, cells_total: shape.cells_total(), cells_black: 0 }
    }

    fn rect(kind: PatternKind, rows: (usize, usize), cols: (usize, usize), weight: u64) -> Pattern {
        let shape = Shape { kind, rows: Span::new(rows.0, rows.1), cols: Span::new(cols.0, cols.1) };
        Pattern { shape, weight, cells_total: shape.cells_total(), cells_black: 0 }
    }

    fn cells(p: &Pattern) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for r in p.rows().iter() {
            for c in p.cols().iter() {
                out.insert((r, c));
                if p.kind() != PatternKind::Clique {
                    out.insert((c, r));
                }
            }
        }
        out
    }

    fn brute_force_total(candidates: &[Pattern]) -> u64 {
        let k = candidates.len();
        let mut best = 0;
        for mask in 0u32..1 << k {
            let chosen: Vec<&Pattern> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| &candidates[b]).collect();
            let ok = chosen.iter().enumerate().all(|(a, p)| {
                chosen[a + 1..].iter().all(|q| !p.rows().overlaps(q.rows()))
            });
            if ok {
                best = best.max(chosen.iter().map(|p| p.weight).sum());
            }
        }
        best
    }

    #[test]
    fn mwis_small_example() {
        let got = select_cliques(&[clique(1, 3, 5), clique(2, 5, 6), clique(4, 7, 4)]);
        let shapes: Vec<_> = got.iter().map(|p| (p.rows().start, p.rows().end)).collect();
        assert_eq!(shapes, [(1, 3), (4, 7)]);
        assert_eq!(got.iter().map(|p| p.weight).sum::<u64>(), 9);
    }

    #[test]
    fn mwis_trivial_cases() {
        assert!(select_cliques(&[]).is_empty());
        assert_eq!(select_cliques(&[clique(0, 4, 3)]), [clique(0, 4, 3)]);
        let all_overlap = [clique(0, 5, 3), clique(2, 6, 9), clique(4, 8, 7)];
        assert_eq!(select_cliques(&all_overlap), [clique(2, 6, 9)]);
    }

    #[test]
    fn mwis_ties_prefer_lexicographically_smallest() {
        let got = select_cliques(&[clique(3, 5, 4), clique(0, 2, 4), clique(1, 4, 4)]);
        assert_eq!(got, [clique(0, 2, 4), clique(3, 5, 4)]);
        let got = select_cliques(&[clique(0, 3, 5), clique(0, 2, 5)]);
        assert_eq!(got, [clique(0, 2, 5)]);
    }

    #[test]
    fn mwis_matches_exhaustive_subsets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let k = rng.gen_range(1..=18);
            let mut seen = BTreeSet::new();
            let mut candidates = Vec::new();
            while candidates.len() < k {
                let i = rng.gen_range(0..40);
                let j = rng.gen_range(i + 2..i + 12);
                if seen.insert((i, j)) {
                    candidates.push(clique(i, j, rng.gen_range(1..=100)));
                }
            }
            let got = select_cliques(&candidates);
            assert_eq!(got.iter().map(|p| p.weight).sum::<u64>(), brute_force_total(&candidates));
            for (a, p) in got.iter().enumerate() {
                for q in &got[a + 1..] {
                    assert!(!p.rows().overlaps(q.rows()));
                }
            }
        }
    }

    #[test]
    fn disjoint_examples() {
        let c = clique(2, 5, 1);
        let b = rect(PatternKind::Biclique, (3, 4), (8, 9), 1);
        assert!(disjoint(&c, &b));
        let b1 = rect(PatternKind::Biclique, (1, 2), (5, 6), 1);
        let b2 = rect(PatternKind::Biclique, (5, 6), (8, 9), 1);
        assert!(disjoint(&b1, &b2));
        assert!(!disjoint(&b1, &b1));
        // the mirror of b1 occupies rows 5..=6, columns 1..=2
        let b3 = rect(PatternKind::Biclique, (0, 1), (5, 5), 1);
        assert!(!disjoint(&b1, &b3));
    }

    #[test]
    fn disjoint_matches_cell_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            if rng.gen_bool(0.3) {
                let i = rng.gen_range(0..16);
                clique(i, rng.gen_range(i + 2..20), 1)
            } else {
                let i = rng.gen_range(0..12);
                let i2 = rng.gen_range(i..14);
                let j = rng.gen_range(i2 + 1..18);
                rect(PatternKind::Biclique, (i, i2), (j, rng.gen_range(j..20)), 1)
            }
        };
        for _ in 0..2000 {
            let (p, q) = (random(&mut rng), random(&mut rng));
            assert_eq!(disjoint(&p, &q), cells(&p).is_disjoint(&cells(&q)), "{p:?} {q:?}");
        }
    }

    #[test]
    fn greedy_keeps_heavier_of_overlapping_pair() {
        let heavy = rect(PatternKind::Biclique, (0, 2), (5, 8), 10);
        let light = rect(PatternKind::Biclique, (1, 3), (7, 9), 7);
        assert!(!cells(&heavy).is_disjoint(&cells(&light)));
        let got = select_rect(&[light, heavy], Vec::new(), FilterRule::None);
        assert_eq!(got, [heavy]);
        assert_eq!(select_rect(&[], vec![heavy], FilterRule::None), [heavy]);
    }

    #[test]
    fn relative_filter_skips_small_patterns() {
        let big = clique(0, 9, 1000);
        let small = rect(PatternKind::Star, (10, 10), (12, 16), 9);
        let ok = rect(PatternKind::Star, (11, 11), (12, 16), 10);
        let got = select_rect(&[small, ok], vec![big], FilterRule::Relative(0.01));
        assert_eq!(got, [big, ok]);
        let got = select_rect(&[small], vec![big], FilterRule::Absolute(5));
        assert_eq!(got, [big, small]);
        assert!(FilterRule::Relative(1.5).validate().is_err());
        assert!(FilterRule::Relative(0.0).validate().is_err());
    }

    fn matrix(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> AdjacencyMatrix {
        materialize(&Graph::with_numeric_labels(n, edges).unwrap(), &Ordering::identity(n)).unwrap()
    }

    #[test]
    fn precision_examples() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        edges.retain(|&e| e != (0, 3) && e != (2, 5));
        edges.push((7, 9));
        let m = matrix(10, edges);
        let empty = PrecisionCounts { white_out: 62, white_in: 0, black_in: 0, black_out: 28 };
        assert_eq!(precision(&m, &[]), empty);
        let tables = PrefixTables::new(&m);
        let c = Pattern::measure(&tables, Shape::clique(0, 5));
        let got = precision(&m, &[c]);
        assert_eq!(got.white_in, 4);
        assert_eq!(got.black_in, 26);
        assert_eq!(got.black_out, 2);
        assert_eq!(got.total(), 90);
    }

    #[test]
    fn empty_graph_decomposes_to_nothing() {
        let m = matrix(8, []);
        let (d, candidates) = decompose(&m, &DecomposeConfig::default()).unwrap();
        assert!(d.patterns.is_empty() && candidates.is_empty());
        assert_eq!(d.precision, PrecisionCounts { white_out: 56, ..Default::default() });
    }

    #[test]
    fn planted_clique_and_biclique_in_place() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        for u in 8..12 {
            for v in 14..20 {
                edges.push((u, v));
            }
        }
        let m = matrix(22, edges);
        let cfg = DecomposeConfig { model: NoiseModel::local(0.5, 1.0), ..Default::default() };
        let (d, candidates) = decompose(&m, &cfg).unwrap();
        let shapes: Vec<Shape> = d.patterns.iter().map(|p| p.shape).collect();
        assert!(shapes.contains(&Shape::clique(0, 5)));
        assert!(shapes.contains(&Shape::biclique(Span::new(8, 11), Span::new(14, 19))));
        assert_eq!(d.total_weight, 40 + 38);
        assert_eq!(d.precision.black_out, 0);
        assert_eq!(d.precision.white_in, 0);
        assert!(d.addable_candidate(&candidates, cfg.filter).is_none());
    }
}
