//! Straightforward dense elimination on `u8` rows.
//!
//! Kept independent of the packed-row engine so the two can be checked
//! against each other.

use alloc::vec::Vec;

/// Rank of a matrix given as rows of 0/1 bytes.
pub fn rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|x| x & 1).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of homology of a square differential, `n - 2 * rank(d)`.
pub fn homology_dim(d: &[Vec<u8>]) -> usize {
    d.len() - 2 * rank(d)
}

/// Product of byte matrices, for checking `d * d = 0` independently.
pub fn product(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(0u8, |acc, k| acc ^ (row[k] & b[k][j])))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[vec![1, 1], vec![0, 0]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 3);
        assert_eq!(rank(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank(&[]), 0);
    }
}
