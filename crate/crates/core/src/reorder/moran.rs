//! Moran's I of a binary matrix under rook adjacency, and the row
//! similarity it induces.
//!
//! For an `n x n` 0/1 matrix with `m` black cells, `B` black-black and `W`
//! white-white unordered rook adjacencies, the general Moran's I
//!
//! ```text
//! I = (N / S0) * sum_ij w_ij (x_i - mean)(x_j - mean) / sum_i (x_i - mean)^2
//! ```
//!
//! with `N = n^2` and `S0 = 4n(n-1)` collapses to `c_B * B + c_W * W - 1` with
//!
//! ```text
//! c_B = n / (2 (n-1) m)        c_W = n / (2 (n-1) (n^2 - m))
//! ```
//!
//! The `1/m` factor on `c_B` is required; without it the closed form does not
//! agree with the general definition (see the oracle test in this module).

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Weights of black-black and white-white adjacencies in the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoransConstants {
    pub c_black: f64,
    pub c_white: f64,
    pub n: usize,
    /// Black cells in the whole matrix.
    pub m: usize,
}

impl MoransConstants {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let cells = n * n;
        if n < 2 || m == 0 || m >= cells {
            return Err(Error::Degenerate);
        }
        let (nf, mf) = (n as f64, m as f64);
        let half = 2.0 * (nf - 1.0);
        Ok(MoransConstants {
            c_black: nf / (half * mf),
            c_white: nf / (half * (cells as f64 - mf)),
            n,
            m,
        })
    }

    pub fn for_matrix(matrix: &AdjacencyMatrix) -> Result<Self> {
        MoransConstants::new(matrix.n(), matrix.black_cells())
    }
}

/// Unordered rook adjacency counts `(B, W)` over the whole matrix.
pub fn adjacency_counts(matrix: &AdjacencyMatrix) -> (usize, usize) {
    let n = matrix.n();
    if n < 2 {
        return (0, 0);
    }
    let mut black = 0;
    let mut white = 0;
    for i in 0..n {
        let (b, w) = horizontal_counts(matrix.row_words(i), n, matrix.get(i, n - 1));
        black += b;
        white += w;
        if i + 1 < n {
            let (b, w) = matrix.row_agreement(i, i + 1);
            black += b;
            white += w;
        }
    }
    (black, white)
}

fn horizontal_counts(row: &[u64], n: usize, last_black: bool) -> (usize, usize) {
    let mut both = 0;
    let mut either = 0;
    for (k, &x) in row.iter().enumerate() {
        let carry = row.get(k + 1).map_or(0, |next| next << 63);
        let next = (x >> 1) | carry;
        both += (x & next).count_ones() as usize;
        either += (x | next).count_ones() as usize;
    }
    // position n-1 has no right neighbour
    either -= usize::from(last_black);
    (both, (n - 1) - either)
}

/// Moran's I via the closed form for 0/1 matrices.
pub fn morans_i_simplified(matrix: &AdjacencyMatrix) -> Result<f64> {
    let k = MoransConstants::for_matrix(matrix)?;
    let (b, w) = adjacency_counts(matrix);
    Ok(k.c_black * b as f64 + k.c_white * w as f64 - 1.0)
}

/// `c_B * B|(u, v) + c_W * W|(u, v)`: the contribution rows `u` and `v`
/// would make as vertical neighbours.
pub fn row_similarity(matrix: &AdjacencyMatrix, k: &MoransConstants, u: usize, v: usize) -> f64 {
    let (b, w) = matrix.row_agreement(u, v);
    k.c_black * b as f64 + k.c_white * w as f64
}

/// `1 - s(u, v)`. Not clamped; see `TspInstance::shift`.
pub fn distance(matrix: &AdjacencyMatrix, k: &MoransConstants, u: usize, v: usize) -> f64 {
    1.0 - row_similarity(matrix, k, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{materialize, Graph, Ordering};
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};

    /// General Moran's I with rook weights, straight from the definition.
    fn general_morans_i(cells: &[Vec<bool>]) -> f64 {
        let rows = cells.len();
        let cols = cells[0].len();
        let x: Vec<f64> = cells.iter().flatten().map(|&b| f64::from(u8::from(b))).collect();
        let big_n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / big_n;
        let mut num = 0.0;
        let mut s0 = 0.0;
        for r in 0..rows {
            for c in 0..cols {
                let neighbours = [
                    (r.wrapping_sub(1), c),
                    (r + 1, c),
                    (r, c.wrapping_sub(1)),
                    (r, c + 1),
                ];
                for (rr, cc) in neighbours {
                    if rr < rows && cc < cols {
                        num += (x[r * cols + c] - mean) * (x[rr * cols + cc] - mean);
                        s0 += 1.0;
                    }
                }
            }
        }
        let den: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
        (big_n / s0) * num / den
    }

    fn dense(m: &AdjacencyMatrix) -> Vec<Vec<bool>> {
        (0..m.n()).map(|i| (0..m.n()).map(|j| m.get(i, j)).collect()).collect()
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::with_numeric_labels(n, edges).unwrap()
    }

    #[test]
    fn two_by_two_anti_diagonal() {
        let m = AdjacencyMatrix::from_cells(&[[false, true], [true, false]]).unwrap();
        assert_eq!(adjacency_counts(&m), (0, 0));
        assert_eq!(morans_i_simplified(&m).unwrap(), -1.0);
    }

    #[test]
    fn degenerate_inputs() {
        let empty = AdjacencyMatrix::from_cells(&[[false, false], [false, false]]).unwrap();
        assert_eq!(morans_i_simplified(&empty), Err(Error::Degenerate));
        assert_eq!(MoransConstants::new(3, 9), Err(Error::Degenerate));
    }

    #[test]
    fn closed_form_matches_general_definition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(2..=70);
            let p = rng.gen_range(0.05..0.9);
            let g = random_graph(&mut rng, n, p);
            let m = materialize(&g, &Ordering::identity(n)).unwrap();
            let Ok(fast) = morans_i_simplified(&m) else { continue };
            let slow = general_morans_i(&dense(&m));
            assert!(((fast - slow) / slow).abs() < 1e-9, "n={n}: {fast} vs {slow}");
        }
    }

    #[test]
    fn published_constant_disagrees_with_definition() {
        // c_B = n / (2(n-1)) without the 1/m factor.
        let g = Graph::with_numeric_labels(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)])
            .unwrap();
        let m = materialize(&g, &Ordering::identity(6)).unwrap();
        let (b, w) = adjacency_counts(&m);
        assert!(b > 0);
        let (n, black) = (6.0, m.black_cells() as f64);
        let published = n / (2.0 * (n - 1.0)) * b as f64
            + n / (2.0 * (n - 1.0) * (n * n - black)) * w as f64
            - 1.0;
        let truth = general_morans_i(&dense(&m));
        assert!((published - truth).abs() > 1e-3);
        assert!((morans_i_simplified(&m).unwrap() - truth).abs() < 1e-12);
    }

    #[test]
    fn transpose_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 9, 0.4);
        let m = materialize(&g, &Ordering::identity(9)).unwrap();
        let cells = dense(&m);
        let transposed: Vec<Vec<bool>> =
            (0..9).map(|j| (0..9).map(|i| cells[i][j]).collect()).collect();
        assert_eq!(general_morans_i(&cells), general_morans_i(&transposed));
        // symmetric matrices are their own transpose, so also check horizontal = vertical
        let mut horizontal = (0, 0);
        let mut vertical = (0, 0);
        for i in 0..9 {
            for j in 0..8 {
                let (a, b) = (cells[i][j], cells[i][j + 1]);
                horizontal.0 += usize::from(a && b);
                horizontal.1 += usize::from(!a && !b);
                let (a, b) = (cells[j][i], cells[j + 1][i]);
                vertical.0 += usize::from(a && b);
                vertical.1 += usize::from(!a && !b);
            }
        }
        assert_eq!(horizontal, vertical);
        assert_eq!(adjacency_counts(&m), (horizontal.0 * 2, horizontal.1 * 2));
    }

    #[test]
    fn similarity_examples() {
        // In this 5x5 matrix row 4 reads 10110 and row 2 reads 10011.
        let g = Graph::with_numeric_labels(5, [(2, 0), (2, 3), (2, 4), (4, 0), (4, 3)]).unwrap();
        let m = materialize(&g, &Ordering::identity(5)).unwrap();
        let k = MoransConstants::for_matrix(&m).unwrap();
        assert_eq!(m.row_agreement(4, 2), (2, 1));
        let s = row_similarity(&m, &k, 4, 2);
        assert!((s - (2.0 * k.c_black + k.c_white)).abs() < 1e-15);
        assert!((distance(&m, &k, 4, 2) - (1.0 - 2.0 * k.c_black - k.c_white)).abs() < 1e-15);
        assert_eq!(distance(&m, &k, 4, 2), distance(&m, &k, 2, 4));
    }

    #[test]
    fn complementary_and_identical_rows() {
        // 4-cycle 0-1-2-3: rows 0 (0101) and 1 (1010) are complements.
        let g = Graph::with_numeric_labels(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let m = materialize(&g, &Ordering::identity(4)).unwrap();
        let k = MoransConstants::for_matrix(&m).unwrap();
        assert_eq!(row_similarity(&m, &k, 0, 1), 0.0);
        assert_eq!(distance(&m, &k, 0, 1), 1.0);

        // two isolated vertices share all-white rows of width n
        let g = Graph::with_numeric_labels(5, [(0, 1)]).unwrap();
        let m = materialize(&g, &Ordering::identity(5)).unwrap();
        let k = MoransConstants::for_matrix(&m).unwrap();
        assert_eq!(row_similarity(&m, &k, 3, 4), k.c_white * 5.0);
    }
}
