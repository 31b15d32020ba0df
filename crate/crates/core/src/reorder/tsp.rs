//! Symmetric TSP instances and solvers.
//!
//! The exact solver is a Held-Karp dynamic program over classes of
//! interchangeable vertices (vertices whose distance rows agree). With all
//! classes of size one it is the textbook `O(2^n n^2)` program; graphs with
//! twin vertices (isolated vertices, biclique sides) collapse to a much
//! smaller state space while staying exact.

use alloc::vec;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, Ordering};
use crate::reorder::moran::{distance, MoransConstants};

/// Default capacity of the exact solver: instances whose DP needs at most
/// `2^16` count vectors (16 distinct vertices besides the fixed start).
pub const EXACT_CAP: u32 = 16;

const IMPROVE_EPS: f64 = 1e-12;

/// Complete symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    size: usize,
    dist: Vec<f64>,
    shift: f64,
}

impl TspInstance {
    /// Builds an instance from a full row-major matrix.
    pub fn from_full_matrix(size: usize, dist: Vec<f64>) -> Result<Self> {
        if dist.len() != size * size {
            return Err(Error::InvalidParameter("distance matrix must be size x size"));
        }
        for u in 0..size {
            for v in 0..size {
                let d = dist[u * size + v];
                if !d.is_finite() || d < 0.0 || d != dist[v * size + u] {
                    return Err(Error::InvalidParameter(
                        "distances must be finite, nonnegative and symmetric",
                    ));
                }
            }
        }
        Ok(TspInstance { size, dist, shift: 0.0 })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.size + v]
    }

    /// Constant added to every row-row distance to make them nonnegative.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Index of the virtual vertex when built by [`build_instance`].
    pub fn omega(&self) -> usize {
        self.size - 1
    }

    pub fn tour_length(&self, seq: &[usize]) -> f64 {
        let k = seq.len();
        if k < 2 {
            return 0.0;
        }
        (0..k).map(|i| self.dist(seq[i], seq[(i + 1) % k])).sum()
    }
}

/// Row-distance instance of `matrix` plus a virtual vertex at index `n`
/// that is at distance zero from every row.
pub fn build_instance(matrix: &AdjacencyMatrix) -> Result<TspInstance> {
    let n = matrix.n();
    let k = MoransConstants::for_matrix(matrix)?;
    let size = n + 1;
    let mut dist = vec![0.0; size * size];
    let mut min: f64 = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            let d = distance(matrix, &k, u, v);
            dist[u * size + v] = d;
            dist[v * size + u] = d;
            min = min.min(d);
        }
    }
    // Every tour crosses exactly n-1 row-row edges, so a uniform shift
    // preserves the optimum.
    let shift = -min;
    if shift > 0.0 {
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    dist[u * size + v] += shift;
                }
            }
        }
    }
    Ok(TspInstance { size, dist, shift })
}

/// A cyclic visiting order.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub sequence: Vec<usize>,
    pub length: f64,
}

impl Tour {
    pub fn new(t: &TspInstance, sequence: Vec<usize>) -> Self {
        let length = t.tour_length(&sequence);
        Tour { sequence, length }
    }

    /// Rotates the tour so `omega` comes first and drops it.
    pub fn to_ordering(&self, omega: usize) -> Ordering {
        let at = self.sequence.iter().position(|&v| v == omega).unwrap_or(0);
        let k = self.sequence.len();
        let perm = (1..k).map(|i| self.sequence[(at + i) % k]).collect();
        Ordering::new(perm).expect("tour minus omega is a permutation")
    }
}

/// Ordering encoded by `tour` on an instance from [`build_instance`].
pub fn tour_to_ordering(tour: &Tour) -> Ordering {
    tour.to_ordering(tour.sequence.len() - 1)
}

struct Classes {
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Groups vertices with identical distance rows.
fn interchangeable_classes(t: &TspInstance) -> Classes {
    let n = t.size;
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for v in 0..n {
        let found = members.iter().position(|class| {
            let rep = class[0];
            let intra_ok = class.len() < 2 || t.dist(rep, v) == t.dist(rep, class[1]);
            intra_ok && (0..n).all(|x| x == rep || x == v || t.dist(rep, x) == t.dist(v, x))
        });
        match found {
            Some(c) => {
                members[c].push(v);
                class_of[v] = c;
            }
            None => {
                class_of[v] = members.len();
                members.push(vec![v]);
            }
        }
    }
    Classes { members, class_of }
}

/// Number of DP count vectors the exact solver needs. The start vertex is
/// fixed, so a singleton start class does not count.
pub fn exact_state_count(t: &TspInstance) -> u128 {
    let counts: Vec<usize> = interchangeable_classes(t).members.iter().map(Vec::len).collect();
    budget(&counts)
}

fn budget(counts: &[usize]) -> u128 {
    let all = counts.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128 + 1));
    if counts.contains(&1) {
        all / 2
    } else {
        all
    }
}

/// Globally optimal tour. Fails with [`Error::Capacity`] when the DP would
/// need more than `2^cap` count vectors.
pub fn solve_exact(t: &TspInstance, cap: u32) -> Result<Tour> {
    let n = t.size;
    if n <= 3 {
        return Ok(Tour::new(t, (0..n).collect()));
    }
    let classes = interchangeable_classes(t);
    let counts: Vec<usize> = classes.members.iter().map(Vec::len).collect();
    let k = counts.len();
    let limit = 1u128 << cap.min(100);
    let needed = budget(&counts);
    if needed > limit {
        return Err(Error::Capacity { states: needed, limit });
    }
    let states = counts.iter().map(|&c| c + 1).product::<usize>();

    let mut stride = vec![1usize; k];
    for c in 1..k {
        stride[c] = stride[c - 1] * (counts[c - 1] + 1);
    }
    // distance between a member of class a and a different member of class b
    let rep = |c: usize| classes.members[c][0];
    let class_dist = |a: usize, b: usize| -> f64 {
        if a == b {
            let m = &classes.members[a];
            if m.len() > 1 {
                t.dist(m[0], m[1])
            } else {
                0.0
            }
        } else {
            t.dist(rep(a), rep(b))
        }
    };
    let cd: Vec<f64> = (0..k * k).map(|i| class_dist(i / k, i % k)).collect();

    // Start at the lowest-index vertex of the first singleton class if one
    // exists, else at vertex 0.
    let start_class = (0..k).find(|&c| counts[c] == 1).unwrap_or(classes.class_of[0]);
    let start_state = stride[start_class];

    let mut dp = vec![f64::INFINITY; states * k];
    let mut parent = vec![u32::MAX; states * k];
    dp[start_state * k + start_class] = 0.0;

    let mut used = vec![0usize; k];
    for state in 0..states {
        // decode counts
        let mut rest = state;
        for c in 0..k {
            used[c] = rest % (counts[c] + 1);
            rest /= counts[c] + 1;
        }
        for last in 0..k {
            let base = dp[state * k + last];
            if !base.is_finite() {
                continue;
            }
            for next in 0..k {
                if used[next] == counts[next] {
                    continue;
                }
                let to = (state + stride[next]) * k + next;
                let cost = base + cd[last * k + next];
                if cost < dp[to] {
                    dp[to] = cost;
                    parent[to] = last as u32;
                }
            }
        }
    }

    let full = states - 1;
    let mut best = f64::INFINITY;
    let mut best_last = 0;
    for last in 0..k {
        let closing = cd[last * k + start_class];
        let cost = dp[full * k + last] + closing;
        if cost < best {
            best = cost;
            best_last = last;
        }
    }

    // Walk parents back to the start, collecting the class sequence.
    let mut class_seq = Vec::with_capacity(n);
    let mut state = full;
    let mut last = best_last;
    while state != start_state || last != start_class {
        class_seq.push(last);
        let prev = parent[state * k + last] as usize;
        state -= stride[last];
        last = prev;
    }
    class_seq.push(start_class);
    class_seq.reverse();

    let mut next_member = vec![0usize; k];
    let sequence = class_seq
        .into_iter()
        .map(|c| {
            let v = classes.members[c][next_member[c]];
            next_member[c] += 1;
            v
        })
        .collect();
    Ok(Tour::new(t, sequence))
}

/// Tuning knobs for [`solve_heuristic_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// Double-bridge perturbations tried after the first local optimum.
    pub kicks: usize,
    /// Local-search passes allowed per vertex of the instance.
    pub passes_per_vertex: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { kicks: 32, passes_per_vertex: 50 }
    }
}

/// Nearest-neighbour tour from the last vertex (the virtual vertex of
/// [`build_instance`]), improved with 2-opt and Or-opt, then perturbed with
/// seeded double-bridge kicks. Never longer than the construction tour.
pub fn solve_heuristic(t: &TspInstance, seed: u64) -> Tour {
    solve_heuristic_with(t, seed, HeuristicConfig::default())
}

pub fn solve_heuristic_with(t: &TspInstance, seed: u64, cfg: HeuristicConfig) -> Tour {
    let start = nearest_neighbour(t, t.size.saturating_sub(1));
    improve_from(t, start, seed, cfg)
}

/// Runs the improvement phase from a caller-supplied tour.
pub fn improve_from(t: &TspInstance, initial: Vec<usize>, seed: u64, cfg: HeuristicConfig) -> Tour {
    let n = t.size;
    if n <= 3 {
        return Tour::new(t, initial);
    }
    let budget = cfg.passes_per_vertex * n;
    let mut best = initial;
    local_search(t, &mut best, budget);
    let mut best_len = t.tour_length(&best);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n >= 8 {
        for _ in 0..cfg.kicks {
            let mut cand = double_bridge(&best, &mut rng);
            local_search(t, &mut cand, budget);
            let len = t.tour_length(&cand);
            if len < best_len - IMPROVE_EPS {
                best = cand;
                best_len = len;
            }
        }
    }
    Tour { sequence: best, length: best_len }
}

pub fn nearest_neighbour(t: &TspInstance, start: usize) -> Vec<usize> {
    let n = t.size;
    if n == 0 {
        return Vec::new();
    }
    let mut visited = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    seq.push(cur);
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut best = f64::INFINITY;
        for v in 0..n {
            if !visited[v] && t.dist(cur, v) < best {
                best = t.dist(cur, v);
                next = v;
            }
        }
        visited[next] = true;
        seq.push(next);
        cur = next;
    }
    seq
}

fn local_search(t: &TspInstance, tour: &mut Vec<usize>, budget: usize) {
    let mut passes = 0;
    loop {
        let mut improved = false;
        while passes < budget && two_opt_pass(t, tour) {
            passes += 1;
            improved = true;
        }
        while passes < budget && or_opt_pass(t, tour) {
            passes += 1;
            improved = true;
        }
        if !improved || passes >= budget {
            break;
        }
        // Or-opt may have broken 2-opt optimality; loop until neither moves.
        if !two_opt_pass(t, tour) {
            break;
        }
        passes += 1;
    }
}

/// Applies the best improving 2-opt move, if any.
fn two_opt_pass(t: &TspInstance, tour: &mut [usize]) -> bool {
    let n = tour.len();
    let mut best = -IMPROVE_EPS;
    let mut best_move = None;
    for i in 0..n - 1 {
        let (a, b) = (tour[i], tour[i + 1]);
        let j_end = if i == 0 { n - 1 } else { n };
        for j in i + 2..j_end {
            let (c, d) = (tour[j], tour[(j + 1) % n]);
            let delta = t.dist(a, c) + t.dist(b, d) - t.dist(a, b) - t.dist(c, d);
            if delta < best {
                best = delta;
                best_move = Some((i, j));
            }
        }
    }
    match best_move {
        Some((i, j)) => {
            tour[i + 1..=j].reverse();
            true
        }
        None => false,
    }
}

/// Applies the best improving Or-opt move (segments of 1 to 3 vertices,
/// optionally reversed), if any.
fn or_opt_pass(t: &TspInstance, tour: &mut Vec<usize>) -> bool {
    let n = tour.len();
    let mut best = -IMPROVE_EPS;
    let mut best_move = None;
    for len in 1..=3usize {
        if len + 2 > n {
            break;
        }
        for i in 0..=n - len {
            let first = tour[i];
            let last = tour[i + len - 1];
            let prev = tour[(i + n - 1) % n];
            let next = tour[(i + len) % n];
            let removal = t.dist(prev, first) + t.dist(last, next) - t.dist(prev, next);
            // insertion edges (x, y) of the tour with the segment removed
            for p in 0..n {
                let q = (p + 1) % n;
                let inside = |x: usize| x >= i && x < i + len;
                if inside(p) || inside(q) {
                    continue;
                }
                let (x, y) = (tour[p], tour[q]);
                let forward = t.dist(x, first) + t.dist(last, y) - t.dist(x, y);
                let backward = t.dist(x, last) + t.dist(first, y) - t.dist(x, y);
                let (insert, rev) = if backward < forward { (backward, true) } else { (forward, false) };
                let delta = insert - removal;
                if delta < best {
                    best = delta;
                    best_move = Some((i, len, p, rev));
                }
            }
        }
    }
    let Some((i, len, p, rev)) = best_move else {
        return false;
    };
    let mut segment: Vec<usize> = tour[i..i + len].to_vec();
    if rev {
        segment.reverse();
    }
    let after = tour[p];
    let mut rest: Vec<usize> = tour[..i].iter().chain(&tour[i + len..]).copied().collect();
    let at = rest.iter().position(|&v| v == after).expect("insertion point survives removal") + 1;
    rest.splice(at..at, segment);
    *tour = rest;
    true
}

fn double_bridge(tour: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = tour.len();
    let mut cuts = [0usize; 3];
    for c in &mut cuts {
        *c = 1 + (rng.next_u64() % (n as u64 - 1)) as usize;
    }
    cuts.sort_unstable();
    let [a, b, c] = cuts;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&tour[..a]);
    out.extend_from_slice(&tour[c..]);
    out.extend_from_slice(&tour[b..c]);
    out.extend_from_slice(&tour[a..b]);
    out
}
