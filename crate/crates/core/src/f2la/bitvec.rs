use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD_BITS: usize = 64;

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector with ones at `indices`. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD_BITS + t)
                }
            })
        })
    }

    /// Copies `self` into positions `offset..offset + self.len()` of a vector of length `len`.
    pub fn placed(&self, len: usize, offset: usize) -> BitVec {
        assert!(offset + self.len <= len);
        BitVec::from_indices(len, self.ones().map(|i| i + offset))
    }

    /// The sub-vector on positions `range`.
    pub fn slice(&self, range: core::ops::Range<usize>) -> BitVec {
        assert!(range.end <= self.len);
        let start = range.start;
        BitVec::from_indices(
            range.len(),
            self.ones().filter(|i| range.contains(i)).map(|i| i - start),
        )
    }

    /// Appends `other` after the last bit of `self`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = self.placed(self.len + other.len, 0);
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_across_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.set(64, false);
        assert_eq!(v.first_one(), Some(0));
        assert!(!v.get(64));
    }

    #[test]
    fn dot_and_xor() {
        let a = BitVec::from_indices(70, [1, 3, 69]);
        let b = BitVec::from_indices(70, [3, 69]);
        assert!(!a.dot(&b));
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(c, BitVec::unit(70, 1));
    }

    #[test]
    fn slice_and_concat() {
        let a = BitVec::from_indices(5, [0, 4]);
        let b = BitVec::from_indices(3, [1]);
        let c = a.concat(&b);
        assert_eq!(c.ones().collect::<Vec<_>>(), vec![0, 4, 6]);
        assert_eq!(c.slice(4..8), BitVec::from_indices(4, [0, 2]));
    }
}
