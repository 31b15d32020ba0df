//! Graphs, vertex orderings and ordered adjacency matrices.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph with labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from labels and an edge list. Duplicate edges collapse;
    /// `(u, v)` and `(v, u)` are the same edge.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { labels, edges: set })
    }

    /// Graph on vertices labelled `1..=n`.
    pub fn with_numeric_labels<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (1..=n).map(|i| alloc::format!("{i}")).collect();
        Graph::new(labels, edges)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// A vertex ordering: `perm[position] = vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    perm: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Ordering { perm: (0..n).collect() }
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = alloc::vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::NotPermutation);
            }
            seen[v] = true;
        }
        Ok(Ordering { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Vertex placed at `position`.
    pub fn vertex(&self, position: usize) -> usize {
        self.perm[position]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Inverse map: `positions()[vertex] = position`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = alloc::vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Composition `i -> base(self(i))`: `self` reorders the positions of `base`.
    pub fn then(&self, base: &Ordering) -> Ordering {
        Ordering {
            perm: self.perm.iter().map(|&p| base.perm[p]).collect(),
        }
    }
}

const WORD: usize = 64;

/// Symmetric 0/1 matrix with a zero diagonal, stored as packed bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    ordering: Ordering,
}

impl AdjacencyMatrix {
    fn blank(n: usize, ordering: Ordering) -> Self {
        let words = n.div_ceil(WORD).max(1);
        AdjacencyMatrix {
            n,
            words,
            bits: alloc::vec![0; n * words],
            ordering,
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / WORD] |= 1 << (j % WORD);
    }

    /// Validates a dense cell grid. The first offending cell, in row-major
    /// order, is reported.
    pub fn from_cells<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            let len = row.as_ref().len();
            if len != n {
                return Err(Error::NotSquare { row: i, expected: n, found: len });
            }
        }
        let mut m = AdjacencyMatrix::blank(n, Ordering::identity(n));
        for i in 0..n {
            let row = rows[i].as_ref();
            for j in 0..n {
                if i == j && row[j] {
                    return Err(Error::NonzeroDiagonal { index: i });
                }
                if row[j] != rows[j].as_ref()[i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
                if row[j] {
                    m.set(i, j);
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of black cells (twice the edge count).
    pub fn black_cells(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.black_cells() / 2
    }

    /// Counts columns where rows `u` and `v` are both black, and both white.
    pub fn row_agreement(&self, u: usize, v: usize) -> (usize, usize) {
        let (a, b) = (self.row_words(u), self.row_words(v));
        let mut both_black = 0;
        let mut either_black = 0;
        for (x, y) in a.iter().zip(b) {
            both_black += (x & y).count_ones() as usize;
            either_black += (x | y).count_ones() as usize;
        }
        (both_black, self.n - either_black)
    }

    /// Graph whose vertex `i` is row `i` of this matrix, labelled `1..=n`.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::with_numeric_labels(self.n, edges).expect("validated matrix yields a simple graph")
    }

    /// Permutes rows and columns: row `i` of the result is row `order(i)`
    /// of `self`. The stored ordering is composed so it still maps
    /// positions to original graph vertices.
    pub fn permuted(&self, order: &Ordering) -> Result<Self> {
        if order.len() != self.n {
            return Err(Error::NotPermutation);
        }
        let mut m = AdjacencyMatrix::blank(self.n, order.then(&self.ordering));
        for i in 0..self.n {
            let src = order.vertex(i);
            for j in 0..self.n {
                if self.get(src, order.vertex(j)) {
                    m.set(i, j);
                }
            }
        }
        Ok(m)
    }
}

/// Writes `n` lines of `n` characters from `{0,1}`.
impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Adjacency matrix of `g` with rows and columns in the order `o`.
pub fn materialize(g: &Graph, o: &Ordering) -> Result<AdjacencyMatrix> {
    if o.len() != g.n() {
        return Err(Error::NotPermutation);
    }
    let pos = o.positions();
    let mut m = AdjacencyMatrix::blank(g.n(), o.clone());
    for (u, v) in g.edges() {
        m.set(pos[u], pos[v]);
        m.set(pos[v], pos[u]);
    }
    Ok(m)
}
