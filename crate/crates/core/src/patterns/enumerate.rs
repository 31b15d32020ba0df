//! Candidate enumeration: every clique interval, plus one greedy biclique
//! and up to two greedy stars grown from each seed position.

use alloc::vec::Vec;

use super::{test_pattern, NoiseModel, Pattern, PrefixTables, Shape, Span};

/// Which single axis a biclique grows along when growing both is not
/// possible.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum AxisPreference {
    /// Add a row (`i' + 1`) first.
    #[default]
    RowsFirst,
    /// Add a column (`j' + 1`) first.
    ColsFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarOrientation {
    /// One row, seeded with five columns.
    Horizontal,
    /// One column, seeded with five rows.
    Vertical,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub cliques: Vec<Pattern>,
    pub bicliques: Vec<Pattern>,
    pub stars: Vec<Pattern>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.cliques.len() + self.bicliques.len() + self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pattern> {
        self.cliques.iter().chain(&self.bicliques).chain(&self.stars)
    }
}

/// Measures `shape` and keeps it only if it explains at least one
/// black-black adjacency.
fn accept(p: &PrefixTables, shape: Shape) -> Option<Pattern> {
    let pattern = Pattern::measure(p, shape);
    (pattern.weight > 0).then_some(pattern)
}

/// All diagonal intervals of length at least 3 that pass the model.
pub fn enumerate_cliques(p: &PrefixTables, model: &NoiseModel) -> Vec<Pattern> {
    let n = p.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            let shape = Shape::clique(i, j);
            if test_pattern(p, &shape, model) {
                out.extend(accept(p, shape));
            }
        }
    }
    out
}

/// Grows the 2x2 seed at rows `i..=i+1`, columns `j..=j+1` while it stays
/// a noisy biclique above the diagonal. Returns `None` if the seed does not
/// fit or fails the model.
pub fn grow_biclique(
    p: &PrefixTables,
    i: usize,
    j: usize,
    model: &NoiseModel,
    axis: AxisPreference,
) -> Option<Pattern> {
    let n = p.n();
    if i + 1 >= j || j + 1 >= n {
        return None;
    }
    let passes = |r: usize, c: usize| test_pattern(p, &Shape::biclique(Span::new(i, r), Span::new(j, c)), model);
    let (mut r, mut c) = (i + 1, j + 1);
    if !passes(r, c) {
        return None;
    }
    loop {
        let more_rows = r + 1 < j;
        let more_cols = c + 1 < n;
        if more_rows && more_cols && passes(r + 1, c + 1) {
            r += 1;
            c += 1;
            continue;
        }
        let row_step = more_rows && passes(r + 1, c);
        let col_step = more_cols && passes(r, c + 1);
        match (axis, row_step, col_step) {
            (AxisPreference::RowsFirst, true, _) | (AxisPreference::ColsFirst, true, false) => r += 1,
            (_, _, true) => c += 1,
            _ => break,
        }
    }
    accept(p, Shape::biclique(Span::new(i, r), Span::new(j, c)))
}

/// Grows a five-cell star seed at `(i, j)` along its long axis: columns
/// `j..` of row `i`, or rows `i..` of column `j`.
pub fn grow_star(
    p: &PrefixTables,
    i: usize,
    j: usize,
    orientation: StarOrientation,
    model: &NoiseModel,
) -> Option<Pattern> {
    let n = p.n();
    let shape = |end: usize| match orientation {
        StarOrientation::Horizontal => Shape::star(Span::new(i, i), Span::new(j, end)),
        StarOrientation::Vertical => Shape::star(Span::new(i, end), Span::new(j, j)),
    };
    let (seed_end, limit) = match orientation {
        StarOrientation::Horizontal if i < j && j + 4 < n => (j + 4, n),
        StarOrientation::Vertical if i + 4 < j => (i + 4, j),
        _ => return None,
    };
    if !test_pattern(p, &shape(seed_end), model) {
        return None;
    }
    let mut end = seed_end;
    while end + 1 < limit && test_pattern(p, &shape(end + 1), model) {
        end += 1;
    }
    accept(p, shape(end))
}

/// Runs clique enumeration and biclique/star growth from every seed, and
/// removes duplicate shapes. Each list is sorted by position.
pub fn enumerate_all(p: &PrefixTables, model: &NoiseModel, axis: AxisPreference) -> CandidateSet {
    let n = p.n();
    let mut set = CandidateSet {
        cliques: enumerate_cliques(p, model),
        ..CandidateSet::default()
    };
    for i in 0..n {
        for j in i + 1..n {
            set.bicliques.extend(grow_biclique(p, i, j, model, axis));
            set.stars.extend(grow_star(p, i, j, StarOrientation::Horizontal, model));
            set.stars.extend(grow_star(p, i, j, StarOrientation::Vertical, model));
        }
    }
    for list in [&mut set.cliques, &mut set.bicliques, &mut set.stars] {
        list.sort_by_key(|q| q.shape);
        list.dedup_by_key(|q| q.shape);
    }
    set
}
