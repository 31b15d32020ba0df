use core::fmt;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An edge `{v, v}` was supplied.
    SelfLoop { vertex: usize },
    /// An edge endpoint or ordering entry is not a valid vertex index.
    VertexOutOfRange { vertex: usize, n: usize },
    /// The ordering is not a permutation of `0..n`.
    NotPermutation,
    /// The label list does not match the vertex count.
    LabelCount { expected: usize, found: usize },
    /// Matrix is not square.
    NotSquare { row: usize, expected: usize, found: usize },
    /// `cells[row][col] != cells[col][row]`.
    Asymmetric { row: usize, col: usize },
    /// A diagonal cell is black.
    NonzeroDiagonal { index: usize },
    /// All cells share one color, so Moran's I has zero variance.
    Degenerate,
    /// The exact solver would exceed its state budget.
    Capacity { states: u128, limit: u128 },
    /// A parameter is outside its valid range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { vertex } => write!(f, "self-loop on vertex {vertex}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex index {vertex} out of range for {n} vertices")
            }
            Error::NotPermutation => f.write_str("ordering is not a permutation"),
            Error::LabelCount { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Error::NotSquare { row, expected, found } => write!(
                f,
                "matrix is not square: row {row} has {found} cells, expected {expected}"
            ),
            Error::Asymmetric { row, col } => {
                write!(f, "matrix is not symmetric at cell ({row}, {col})")
            }
            Error::NonzeroDiagonal { index } => {
                write!(f, "diagonal cell ({index}, {index}) is nonzero")
            }
            Error::Degenerate => {
                f.write_str("matrix is all black or all white; Moran's I is undefined")
            }
            Error::Capacity { states, limit } => write!(
                f,
                "exact solver needs {states} DP states (limit {limit}); use the heuristic solver"
            ),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
