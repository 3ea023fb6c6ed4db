use alloc::vec::Vec;
use core::fmt;

use super::{BitVec, F2Error};

/// A dense GF(2) matrix stored as packed bit rows.
///
/// Column `j` is the image of the `j`-th basis vector, so a map `A -> B`
/// has shape `dim B x dim A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: F2Matrix,
    pub pivots: Vec<usize>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            data: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from a list of 1-positions, rejecting out-of-range and repeated entries.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, F2Error> {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            if r >= rows || c >= cols {
                return Err(F2Error::EntryOutOfBounds { row: r, col: c, rows, cols });
            }
            if m.get(r, c) {
                return Err(F2Error::DuplicateEntry { row: r, col: c });
            }
            m.set(r, c, true);
        }
        Ok(m)
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        F2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        assert!(c < self.cols);
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().data
    }

    /// 1-positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.ones().map(move |c| (r, c)))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVec::count_ones).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        BitVec::from_bits(&self.data.iter().map(|row| row.dot(v)).collect::<Vec<_>>())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch in product: {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out = BitVec::zeros(rhs.cols);
                for k in row.ones() {
                    out.xor_assign(&rhs.data[k]);
                }
                out
            })
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &F2Matrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            a.xor_assign(b);
        }
    }

    /// Adds `block` into the window whose top-left corner is `(row, col)`.
    pub fn add_block(&mut self, row: usize, col: usize, block: &F2Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for (r, c) in block.entries() {
            self.flip(row + r, col + c);
        }
    }

    pub fn block(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> F2Matrix {
        let data = self.data[rows.clone()]
            .iter()
            .map(|row| row.slice(cols.clone()))
            .collect();
        F2Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// The submatrix on the listed row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Kronecker product; row index `i * rhs.rows + k`, column `j * rhs.cols + l`.
    pub fn kron(&self, rhs: &F2Matrix) -> F2Matrix {
        let mut m = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (i, j) in self.entries() {
            m.add_block(i * rhs.rows, j * rhs.cols, rhs);
        }
        m
    }

    /// Reduced row echelon form. Columns are scanned left to right and the
    /// pivot for each column is the lowest-indexed remaining row with a 1 there.
    pub fn rref(&self) -> Rref {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Rref {
            matrix: F2Matrix {
                rows: self.rows,
                cols: self.cols,
                data: rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the null space, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = BitVec::zeros(self.cols);
        for &p in &pivots {
            is_pivot.set(p, true);
        }
        (0..self.cols)
            .filter(|&f| !is_pivot.get(f))
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None`. Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let augmented = F2Matrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: self
                .data
                .iter()
                .enumerate()
                .map(|(r, row)| row.concat(&BitVec::from_bits(&[b.get(r)])))
                .collect(),
        };
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if matrix.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
