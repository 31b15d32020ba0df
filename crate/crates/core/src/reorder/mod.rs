//! Matrix reordering that maximizes Moran's I.
//!
//! Placing rows `u` and `v` next to each other contributes `s(u, v)` to the
//! vertical adjacency term of Moran's I; for symmetric matrices the
//! horizontal term is identical, so `I(order) = 2n - 3 - 2 * sum(delta)` over
//! consecutive rows. Maximizing I is a shortest Hamiltonian path over the
//! rows, solved as a tour with one extra zero-distance vertex.

pub mod moran;
pub mod tsp;

pub use moran::{
    adjacency_counts, distance, morans_i_simplified, row_similarity, MoransConstants,
};
pub use tsp::{
    build_instance, solve_exact, solve_heuristic, solve_heuristic_with, tour_to_ordering,
    HeuristicConfig, Tour, TspInstance, EXACT_CAP,
};

use crate::error::Result;
use crate::graph::{AdjacencyMatrix, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReorderMethod {
    /// Held-Karp; errors when the instance exceeds `cap`.
    Exact { cap: u32 },
    /// Local search from both the nearest-neighbour tour and the current
    /// order, keeping the shorter.
    Heuristic { seed: u64 },
    /// Exact when it fits in `cap`, otherwise heuristic.
    Auto { cap: u32, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone)]
pub struct Reordered {
    pub matrix: AdjacencyMatrix,
    /// Applied permutation of the input matrix's rows.
    pub order: Ordering,
    pub solver: Solver,
    /// Tour length on the (possibly shifted) instance.
    pub tour_length: f64,
}

/// Path cost `sum(delta)` of visiting the rows of `matrix` in their current
/// order, without the nonnegativity shift.
pub fn path_cost(matrix: &AdjacencyMatrix) -> Result<f64> {
    let k = MoransConstants::for_matrix(matrix)?;
    Ok((1..matrix.n()).map(|i| distance(matrix, &k, i - 1, i)).sum())
}

/// Reorders `matrix` to maximize Moran's I. Degenerate matrices (all white
/// or all black) yield [`crate::Error::Degenerate`].
pub fn reorder(matrix: &AdjacencyMatrix, method: ReorderMethod) -> Result<Reordered> {
    let t = build_instance(matrix)?;
    let (tour, solver) = match method {
        ReorderMethod::Exact { cap } => (solve_exact(&t, cap)?, Solver::Exact),
        ReorderMethod::Heuristic { seed } => (heuristic(&t, seed), Solver::Heuristic),
        ReorderMethod::Auto { cap, seed } => {
            if tsp::exact_state_count(&t) <= 1u128 << cap.min(100) {
                (solve_exact(&t, cap)?, Solver::Exact)
            } else {
                (heuristic(&t, seed), Solver::Heuristic)
            }
        }
    };
    let order = tour_to_ordering(&tour);
    Ok(Reordered {
        matrix: matrix.permuted(&order)?,
        order,
        solver,
        tour_length: tour.length,
    })
}

fn heuristic(t: &TspInstance, seed: u64) -> Tour {
    let cfg = HeuristicConfig::default();
    let from_nn = solve_heuristic_with(t, seed, cfg);
    // current order: omega, 0, 1, ..., n-1
    let mut current = alloc::vec::Vec::with_capacity(t.size());
    current.push(t.omega());
    current.extend(0..t.omega());
    let from_current = tsp::improve_from(t, current, seed, cfg);
    if from_current.length < from_nn.length {
        from_current
    } else {
        from_nn
    }
}
