use alloc::vec::Vec;

use super::FilteredKnotComplex;
use crate::f2la::F2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceMode {
    /// `B{≥s}`, a subcomplex.
    AtLeast,
    /// `B{>s}` = `B{≥s+1}`, a subcomplex.
    Above,
    /// `B{s}`, the graded piece `B{≥s} / B{≥s+1}`.
    Exactly,
}

/// A slice of `B` by level, with its induced differential and coordinate maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub mode: SliceMode,
    pub threshold: i32,
    parent_dim: usize,
    members: Vec<usize>,
    differential: F2Matrix,
}

impl Slice {
    pub(super) fn new(k: &FilteredKnotComplex, s: i32, mode: SliceMode) -> Self {
        let keep = |level: i32| match mode {
            SliceMode::AtLeast => level >= s,
            SliceMode::Above => level > s,
            SliceMode::Exactly => level == s,
        };
        let members: Vec<usize> = (0..k.dim()).filter(|&i| keep(k.level(i))).collect();
        let differential = k.differential().select(&members, &members);
        Slice {
            mode,
            threshold: s,
            parent_dim: k.dim(),
            members,
            differential,
        }
    }

    /// Parent generator indices, in parent order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    /// Position of parent generator `g` inside the slice.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    /// Inclusion of the slice basis into the parent basis (`parent x slice`).
    pub fn embedding(&self) -> F2Matrix {
        let mut m = F2Matrix::zeros(self.parent_dim, self.dim());
        for (j, &g) in self.members.iter().enumerate() {
            m.set(g, j, true);
        }
        m
    }

    /// Coordinate projection of the parent onto the slice (`slice x parent`).
    pub fn projection(&self) -> F2Matrix {
        self.embedding().transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::catalog;
    use crate::f2la::homology;

    #[test]
    fn trefoil_slices() {
        let k = catalog("trefoil").unwrap();
        let top = k.slice(1, SliceMode::AtLeast);
        assert_eq!(top.members(), &[2]);
        assert!(top.differential().is_zero());

        let beyond = k.slice(2, SliceMode::AtLeast);
        assert_eq!(beyond.dim(), 0);

        let middle = k.slice(0, SliceMode::Exactly);
        assert_eq!(middle.members(), &[1]);
        assert!(middle.differential().is_zero());
        assert_eq!(homology(middle.differential()).unwrap().rank(), 1);

        assert_eq!(
            k.slice(0, SliceMode::Above).members(),
            k.slice(1, SliceMode::AtLeast).members()
        );
    }

    #[test]
    fn embedding_is_chain_map_for_subcomplexes() {
        let k = catalog("figure8").unwrap();
        for s in -2..=2 {
            for mode in [SliceMode::AtLeast, SliceMode::Above] {
                let sl = k.slice(s, mode);
                let e = sl.embedding();
                assert_eq!(k.differential().mul(&e), e.mul(sl.differential()));
                assert_eq!(sl.projection().mul(&e), F2Matrix::identity(sl.dim()));
            }
        }
    }
}
