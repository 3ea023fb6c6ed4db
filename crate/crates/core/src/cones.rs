//! Three-block total complexes `X → B ← Y` and mapping cones of chain maps.

use core::fmt;
use core::ops::Range;

use crate::cfk::{FilteredKnotComplex, Slice, SliceMode};
use crate::f2la::{self, F2Error, F2Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    /// Framings below 1 are not supported by the surgery complex.
    UnsupportedFraming(i32),
    NotAComplex(F2Error),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::UnsupportedFraming(n) => {
                write!(f, "surgery coefficient {n} is not supported (need n >= 1)")
            }
            ConeError::NotAComplex(e) => write!(f, "total differential is not a complex: {e}"),
        }
    }
}

impl core::error::Error for ConeError {}

/// Which of the two level complexes to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelKind {
    /// `B{≥s} → B ← B{≥−s}`
    One,
    /// `B{≥s+1} → B ← B{≥−s}`
    Zero,
}

/// The total complex of `X → B ← Y` where both arrows are inclusions.
///
/// Basis order is `X`, then `B`, then `Y`; the differential is
/// `D(x, m, y) = (∂x, x + y + ∂m, ∂y)`.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    left: Slice,
    right: Slice,
    middle_dim: usize,
    differential: F2Matrix,
}

impl ConeComplex {
    pub fn new(k: &FilteredKnotComplex, left: Slice, right: Slice) -> Result<Self, ConeError> {
        let (nx, n, ny) = (left.dim(), k.dim(), right.dim());
        let total = nx + n + ny;
        let mut d = F2Matrix::zeros(total, total);
        d.add_block(0, 0, left.differential());
        d.add_block(nx, nx, k.differential());
        d.add_block(nx + n, nx + n, right.differential());
        d.add_block(nx, 0, &left.embedding());
        d.add_block(nx, nx + n, &right.embedding());
        if let Some((row, col)) = d.mul(&d).entries().next() {
            return Err(ConeError::NotAComplex(F2Error::DifferentialSquaresNonzero { row, col }));
        }
        Ok(ConeComplex {
            left,
            right,
            middle_dim: n,
            differential: d,
        })
    }

    pub fn left(&self) -> &Slice {
        &self.left
    }

    pub fn right(&self) -> &Slice {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.differential.nrows()
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    pub fn left_range(&self) -> Range<usize> {
        0..self.left.dim()
    }

    pub fn middle_range(&self) -> Range<usize> {
        let start = self.left.dim();
        start..start + self.middle_dim
    }

    pub fn right_range(&self) -> Range<usize> {
        let start = self.left.dim() + self.middle_dim;
        start..start + self.right.dim()
    }

    /// Inclusion of one block into the total space (`total x block`).
    pub fn embed(&self, block: Block) -> F2Matrix {
        let range = self.range(block);
        let mut m = F2Matrix::zeros(self.dim(), range.len());
        for (j, i) in range.enumerate() {
            m.set(i, j, true);
        }
        m
    }

    /// Coordinate projection of the total space onto one block.
    pub fn project(&self, block: Block) -> F2Matrix {
        self.embed(block).transpose()
    }

    pub fn range(&self, block: Block) -> Range<usize> {
        match block {
            Block::Left => self.left_range(),
            Block::Middle => self.middle_range(),
            Block::Right => self.right_range(),
        }
    }

    pub fn homology_rank(&self) -> usize {
        self.dim() - 2 * self.differential.rank()
    }

    /// Block-wise inclusion of `self` into `other`, when each block of `self`
    /// is contained in the matching block of `other`.
    pub fn inclusion_into(&self, other: &ConeComplex) -> Option<F2Matrix> {
        let mut m = F2Matrix::zeros(other.dim(), self.dim());
        for (j, &g) in self.left.members().iter().enumerate() {
            m.set(other.left.position(g)?, j, true);
        }
        if self.middle_dim != other.middle_dim {
            return None;
        }
        let (a, b) = (self.middle_range().start, other.middle_range().start);
        for i in 0..self.middle_dim {
            m.set(b + i, a + i, true);
        }
        let (a, b) = (self.right_range().start, other.right_range().start);
        for (j, &g) in self.right.members().iter().enumerate() {
            m.set(b + other.right.position(g)?, a + j, true);
        }
        Some(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Left,
    Middle,
    Right,
}

/// `C_1(s)` or `C_0(s)`.
pub fn level_complex(k: &FilteredKnotComplex, kind: LevelKind, s: i32) -> Result<ConeComplex, ConeError> {
    let left = match kind {
        LevelKind::One => k.slice(s, SliceMode::AtLeast),
        LevelKind::Zero => k.slice(s, SliceMode::Above),
    };
    ConeComplex::new(k, left, k.slice(-s, SliceMode::AtLeast))
}

/// `B{>s−n} → B ← B{≥−s}`, whose homology is the knot Floer homology of the
/// core of `n`-surgery in class `s`.
pub fn surgery_complex(k: &FilteredKnotComplex, n: i32, s: i32) -> Result<ConeComplex, ConeError> {
    if n < 1 {
        return Err(ConeError::UnsupportedFraming(n));
    }
    ConeComplex::new(
        k,
        k.slice(s - n, SliceMode::Above),
        k.slice(-s, SliceMode::AtLeast),
    )
}

/// Total complex of a chain map `f: A → B`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub source_dim: usize,
    pub target_dim: usize,
    pub differential: F2Matrix,
}

impl MappingCone {
    pub fn homology_rank(&self) -> usize {
        self.differential.nrows() - 2 * self.differential.rank()
    }
}

/// Cone of `f`, with basis `A` then `B` and `D(a, b) = (∂a, f(a) + ∂b)`.
pub fn mapping_cone(f: &F2Matrix, d_source: &F2Matrix, d_target: &F2Matrix) -> Result<MappingCone, F2Error> {
    f2la::check_chain_map(f, d_source, d_target)?;
    let (na, nb) = (d_source.nrows(), d_target.nrows());
    let mut d = F2Matrix::zeros(na + nb, na + nb);
    d.add_block(0, 0, d_source);
    d.add_block(na, na, d_target);
    d.add_block(na, 0, f);
    Ok(MappingCone {
        source_dim: na,
        target_dim: nb,
        differential: d,
    })
}
