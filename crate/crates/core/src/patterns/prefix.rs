//! Summed-area tables for constant-time black-black adjacency counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::AdjacencyMatrix;

/// Prefix sums over an `n x n` grid, padded with a zero row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    stride: usize,
    sums: Vec<u32>,
}

impl Table {
    fn build(n: usize, cell: impl Fn(usize, usize) -> bool) -> Self {
        let stride = n + 1;
        let mut sums = vec![0u32; stride * stride];
        for r in 0..n {
            let mut row = 0;
            for c in 0..n {
                row += u32::from(cell(r, c));
                sums[(r + 1) * stride + c + 1] = sums[r * stride + c + 1] + row;
            }
        }
        Table { stride, sums }
    }

    fn at(&self, r: usize, c: usize) -> u32 {
        self.sums[r * self.stride + c]
    }

    /// Sum over rows `r0..=r1`, columns `c0..=c1`.
    fn rect(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u32 {
        if r0 > r1 || c0 > c1 {
            return 0;
        }
        self.at(r1 + 1, c1 + 1) + self.at(r0, c0) - self.at(r0, c1 + 1) - self.at(r1 + 1, c0)
    }
}

/// Prefix tables of one ordered matrix.
///
/// `vertical` marks cells `(r, c)` where `(r, c)` and `(r + 1, c)` are both
/// black, `horizontal` marks `(r, c)` with `(r, c + 1)` also black, and
/// `black` marks black cells. Any rectangle query is four table lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTables {
    n: usize,
    vertical: Table,
    horizontal: Table,
    black: Table,
    /// `superdiag[i]` = black cells `(r, r + 1)` with `r < i`.
    superdiag: Vec<u32>,
}

impl PrefixTables {
    pub fn new(m: &AdjacencyMatrix) -> Self {
        let n = m.n();
        let vertical = Table::build(n, |r, c| r + 1 < n && m.get(r, c) && m.get(r + 1, c));
        let horizontal = Table::build(n, |r, c| c + 1 < n && m.get(r, c) && m.get(r, c + 1));
        let black = Table::build(n, |r, c| m.get(r, c));
        let mut superdiag = vec![0u32; n + 1];
        for r in 0..n {
            let on = r + 1 < n && m.get(r, r + 1);
            superdiag[r + 1] = superdiag[r] + u32::from(on);
        }
        PrefixTables { n, vertical, horizontal, black, superdiag }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Black cells in rows `r0..=r1` x columns `c0..=c1`.
    pub fn black_in(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        u64::from(self.black.rect(r0, r1, c0, c1))
    }

    /// Vertical black-black adjacencies with both cells inside the rectangle.
    pub fn vertical_bb_in(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        if r1 == 0 {
            return 0;
        }
        u64::from(self.vertical.rect(r0, r1 - 1, c0, c1))
    }

    /// Horizontal black-black adjacencies with both cells inside the rectangle.
    pub fn horizontal_bb_in(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        if c1 == 0 {
            return 0;
        }
        u64::from(self.horizontal.rect(r0, r1, c0, c1 - 1))
    }

    /// Columns `c` in `j..=j_end` where rows `u` and `u + 1` are both black.
    /// With `exclude_diagonal`, columns `u` and `u + 1` (which touch the
    /// diagonal) are not counted.
    pub fn vertical_bb(&self, u: usize, j: usize, j_end: usize, exclude_diagonal: bool) -> u64 {
        let mut count = self.vertical.rect(u, u, j, j_end);
        if exclude_diagonal {
            for c in [u, u + 1] {
                if (j..=j_end).contains(&c) {
                    count -= self.vertical.rect(u, u, c, c);
                }
            }
        }
        u64::from(count)
    }

    /// Transposed analogue of [`Self::vertical_bb`]: rows `r` in `i..=i_end`
    /// where columns `c` and `c + 1` are both black.
    pub fn horizontal_bb(&self, c: usize, i: usize, i_end: usize, exclude_diagonal: bool) -> u64 {
        let mut count = self.horizontal.rect(i, i_end, c, c);
        if exclude_diagonal {
            for r in [c, c + 1] {
                if (i..=i_end).contains(&r) {
                    count -= self.horizontal.rect(r, r, c, c);
                }
            }
        }
        u64::from(count)
    }

    /// Black cells `(r, r + 1)` for `r` in `i..j` (the superdiagonal of the
    /// diagonal block `i..=j`).
    pub fn superdiagonal_black(&self, i: usize, j: usize) -> u64 {
        u64::from(self.superdiag[j] - self.superdiag[i])
    }
}
