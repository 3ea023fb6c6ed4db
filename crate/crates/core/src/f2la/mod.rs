//! Exact linear algebra over the two-element field.

mod bitvec;
mod homology;
mod matrix;
pub mod naive;

use core::fmt;

pub use bitvec::BitVec;
pub use homology::{
    check_chain_map, homology, induced_map, kernel_matrix, same_column_space, HomologyPresentation,
};
pub use matrix::{F2Matrix, Rref};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Error {
    EntryOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    DuplicateEntry {
        row: usize,
        col: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// `d * d` has a nonzero entry at `(row, col)`.
    DifferentialSquaresNonzero {
        row: usize,
        col: usize,
    },
    ShapeMismatch {
        map: (usize, usize),
        domain: usize,
        codomain: usize,
    },
    /// `f * d - d * f` is nonzero at `(row, col)`.
    NotAChainMap {
        row: usize,
        col: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotACycle,
}

impl fmt::Display for F2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F2Error::EntryOutOfBounds { row, col, rows, cols } => {
                write!(f, "entry ({row}, {col}) outside a {rows}x{cols} matrix")
            }
            F2Error::DuplicateEntry { row, col } => write!(f, "entry ({row}, {col}) listed twice"),
            F2Error::NotSquare { rows, cols } => {
                write!(f, "differential must be square, got {rows}x{cols}")
            }
            F2Error::DifferentialSquaresNonzero { row, col } => {
                write!(f, "d^2 != 0: entry ({row}, {col}) is 1")
            }
            F2Error::ShapeMismatch { map, domain, codomain } => write!(
                f,
                "map of shape {}x{} cannot go from dimension {domain} to {codomain}",
                map.0, map.1
            ),
            F2Error::NotAChainMap { row, col } => {
                write!(f, "not a chain map: f*d and d*f differ at ({row}, {col})")
            }
            F2Error::DimensionMismatch { expected, found } => {
                write!(f, "expected a vector of length {expected}, got {found}")
            }
            F2Error::NotACycle => f.write_str("vector is not a cycle"),
        }
    }
}

impl core::error::Error for F2Error {}
