//! The eight-vertex cube complex built from the level data of two knots.
//! Its homology has the rank of HF-hat of the splice.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cfk::FilteredKnotComplex;
use crate::f2la::F2Matrix;
use crate::levels::{self, EtaStrategy, Group, LevelError, LevelGroups, LevelMaps};

/// Cube vertices; `(a, b)` stands for `H_a(K_1) ⊗ H_b(K_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    InfInf,
    InfOne,
    OneInf,
    OneOneTop,
    ZeroZero,
    OneZero,
    ZeroOne,
    OneOneBottom,
}

impl Vertex {
    pub const ALL: [Vertex; 8] = [
        Vertex::InfInf,
        Vertex::InfOne,
        Vertex::OneInf,
        Vertex::OneOneTop,
        Vertex::ZeroZero,
        Vertex::OneZero,
        Vertex::ZeroOne,
        Vertex::OneOneBottom,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Vertex::InfInf => "∞∞",
            Vertex::InfOne => "∞1",
            Vertex::OneInf => "1∞",
            Vertex::OneOneTop => "11t",
            Vertex::ZeroZero => "00",
            Vertex::OneZero => "10",
            Vertex::ZeroOne => "01",
            Vertex::OneOneBottom => "11b",
        }
    }

    pub fn groups(self) -> (Group, Group) {
        use Group::*;
        match self {
            Vertex::InfInf => (Infinity, Infinity),
            Vertex::InfOne => (Infinity, One),
            Vertex::OneInf => (One, Infinity),
            Vertex::OneOneTop | Vertex::OneOneBottom => (One, One),
            Vertex::ZeroZero => (Zero, Zero),
            Vertex::OneZero => (One, Zero),
            Vertex::ZeroOne => (Zero, One),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Left or right tensor factor of an edge map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Id,
    Phi,
    PhiBar,
    Psi,
    PsiBar,
    EtaBar,
}

impl Factor {
    fn name(self) -> &'static str {
        match self {
            Factor::Id => "I",
            Factor::Phi => "φ",
            Factor::PhiBar => "φ̄",
            Factor::Psi => "ψ",
            Factor::PsiBar => "ψ̄",
            Factor::EtaBar => "η̄",
        }
    }
}

/// The twelve edges; `11t → 11b` is the identity of `H_1 ⊗ H_1`.
const EDGES: [(Vertex, Vertex, Factor, Factor); 12] = {
    use Factor::*;
    use Vertex::*;
    [
        (OneOneTop, OneInf, Id, Phi),
        (OneOneTop, InfOne, Phi, Id),
        (OneInf, InfInf, Phi, Id),
        (InfOne, InfInf, Id, Phi),
        (ZeroZero, OneZero, Psi, Id),
        (ZeroZero, ZeroOne, Id, Psi),
        (OneZero, OneOneBottom, Id, Psi),
        (ZeroOne, OneOneBottom, Psi, Id),
        (ZeroZero, InfInf, EtaBar, EtaBar),
        (OneZero, InfOne, PhiBar, PsiBar),
        (ZeroOne, OneInf, PsiBar, PhiBar),
        (OneOneTop, OneOneBottom, Id, Id),
    ]
};

/// Level groups and maps of one knot, ready to be spliced.
#[derive(Clone, Debug)]
pub struct KnotLevels {
    pub name: String,
    pub groups: LevelGroups,
    pub maps: LevelMaps,
}

impl KnotLevels {
    pub fn compute(k: &FilteredKnotComplex, eta: &EtaStrategy) -> Result<Self, LevelError> {
        let groups = levels::level_groups(k)?;
        let maps = levels::level_maps(k, &groups, eta)?;
        Ok(KnotLevels {
            name: k.name().into(),
            groups,
            maps,
        })
    }

    fn total(&self, g: Group) -> usize {
        self.groups.total(g)
    }

    fn factor(&self, f: Factor, g: Group) -> F2Matrix {
        match f {
            Factor::Id => F2Matrix::identity(self.total(g)),
            Factor::Phi => self.maps.phi.clone(),
            Factor::PhiBar => self.maps.phibar.clone(),
            Factor::Psi => self.maps.psi.clone(),
            Factor::PsiBar => self.maps.psibar.clone(),
            Factor::EtaBar => self.maps.eta.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpliceError {
    Levels(LevelError),
    /// `d_M²` is nonzero on the block from `source` to `target`; `paths` lists the
    /// two-step composites that contribute.
    NotAComplex {
        source: &'static str,
        target: &'static str,
        paths: Vec<String>,
    },
}

impl fmt::Display for SpliceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpliceError::Levels(e) => e.fmt(f),
            SpliceError::NotAComplex { source, target, paths } => write!(
                f,
                "d_M² ≠ 0 from {source} to {target}; contributing paths: {}",
                paths.join(", ")
            ),
        }
    }
}

impl core::error::Error for SpliceError {}

impl From<LevelError> for SpliceError {
    fn from(e: LevelError) -> Self {
        SpliceError::Levels(e)
    }
}

#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub source: Vertex,
    pub target: Vertex,
    pub label: String,
    pub matrix: F2Matrix,
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    dims: [usize; 8],
    offsets: [usize; 8],
    edges: Vec<CubeEdge>,
    differential: F2Matrix,
}

/// Assembles the cube; every edge is a Kronecker product of level maps.
pub fn build_cube(first: &KnotLevels, second: &KnotLevels) -> Result<CubeComplex, SpliceError> {
    let mut dims = [0; 8];
    let mut offsets = [0; 8];
    let mut total = 0;
    for v in Vertex::ALL {
        let (a, b) = v.groups();
        dims[v.index()] = first.total(a) * second.total(b);
        offsets[v.index()] = total;
        total += dims[v.index()];
    }

    let mut edges = Vec::with_capacity(EDGES.len());
    let mut differential = F2Matrix::zeros(total, total);
    for (source, target, left, right) in EDGES {
        let (sa, sb) = source.groups();
        let matrix = first.factor(left, sa).kron(&second.factor(right, sb));
        debug_assert_eq!(matrix.shape(), (dims[target.index()], dims[source.index()]));
        differential.add_block(offsets[target.index()], offsets[source.index()], &matrix);
        let label = if (left, right) == (Factor::Id, Factor::Id) {
            String::from("Id")
        } else {
            format!("{}⊗{}", left.name(), right.name())
        };
        edges.push(CubeEdge { source, target, label, matrix });
    }

    let cube = CubeComplex {
        dims,
        offsets,
        edges,
        differential,
    };
    cube.check_square()?;
    Ok(cube)
}

impl CubeComplex {
    pub fn dim(&self) -> usize {
        self.differential.nrows()
    }

    pub fn vertex_dim(&self, v: Vertex) -> usize {
        self.dims[v.index()]
    }

    pub fn vertex_offset(&self, v: Vertex) -> usize {
        self.offsets[v.index()]
    }

    pub fn edges(&self) -> &[CubeEdge] {
        &self.edges
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    fn check_square(&self) -> Result<(), SpliceError> {
        for first in &self.edges {
            for second in self.edges.iter().filter(|e| e.source == first.target) {
                // every two-step path with the same endpoints contributes to one block
                let parallel: Vec<(&CubeEdge, &CubeEdge)> = self
                    .edges
                    .iter()
                    .filter(|a| a.source == first.source)
                    .flat_map(|a| {
                        self.edges
                            .iter()
                            .filter(move |b| b.source == a.target && b.target == second.target)
                            .map(move |b| (a, b))
                    })
                    .collect();
                let mut sum = F2Matrix::zeros(
                    self.vertex_dim(second.target),
                    self.vertex_dim(first.source),
                );
                for (a, b) in &parallel {
                    sum.add_assign(&b.matrix.mul(&a.matrix));
                }
                if !sum.is_zero() {
                    return Err(SpliceError::NotAComplex {
                        source: first.source.label(),
                        target: second.target.label(),
                        paths: parallel
                            .iter()
                            .map(|(a, b)| {
                                format!(
                                    "{} -[{}]-> {} -[{}]-> {}",
                                    a.source.label(),
                                    a.label,
                                    a.target.label(),
                                    b.label,
                                    b.target.label()
                                )
                            })
                            .collect(),
                    });
                }
            }
        }
        debug_assert!(self.differential.mul(&self.differential).is_zero());
        Ok(())
    }

    pub fn differential_rank(&self) -> usize {
        self.differential.rank()
    }

    pub fn homology_rank(&self) -> usize {
        self.dim() - 2 * self.differential_rank()
    }

    /// Homology rank after cancelling the identity edge `11t → 11b`.
    ///
    /// Removing both copies of `H_1 ⊗ H_1` leaves six vertices whose differential
    /// gains the zig-zag composites `(11t → v) ∘ (u → 11b)` for every `u → 11b`
    /// and `11t → v`.
    pub fn reduced_homology_rank(&self) -> usize {
        let keep: Vec<Vertex> = Vertex::ALL
            .into_iter()
            .filter(|v| !matches!(v, Vertex::OneOneTop | Vertex::OneOneBottom))
            .collect();
        let mut offsets = [usize::MAX; 8];
        let mut total = 0;
        for &v in &keep {
            offsets[v.index()] = total;
            total += self.vertex_dim(v);
        }
        let mut d = F2Matrix::zeros(total, total);
        for e in &self.edges {
            if keep.contains(&e.source) && keep.contains(&e.target) {
                d.add_block(offsets[e.target.index()], offsets[e.source.index()], &e.matrix);
            }
        }
        for into_bottom in self.edges.iter().filter(|e| e.target == Vertex::OneOneBottom) {
            if !keep.contains(&into_bottom.source) {
                continue;
            }
            for out_of_top in self.edges.iter().filter(|e| e.source == Vertex::OneOneTop) {
                if !keep.contains(&out_of_top.target) {
                    continue;
                }
                d.add_block(
                    offsets[out_of_top.target.index()],
                    offsets[into_bottom.source.index()],
                    &out_of_top.matrix.mul(&into_bottom.matrix),
                );
            }
        }
        debug_assert!(d.mul(&d).is_zero());
        total - 2 * d.rank()
    }
}

/// Summary of one splice computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceSummary {
    pub first: String,
    pub second: String,
    pub strategies: (&'static str, &'static str),
    pub dimension: usize,
    pub differential_rank: usize,
    pub homology_rank: usize,
    pub vertex_dims: Vec<(&'static str, usize)>,
    pub edge_ranks: Vec<(String, usize)>,
}

pub fn splice(first: &KnotLevels, second: &KnotLevels) -> Result<SpliceSummary, SpliceError> {
    let cube = build_cube(first, second)?;
    let differential_rank = cube.differential_rank();
    Ok(SpliceSummary {
        first: first.name.clone(),
        second: second.name.clone(),
        strategies: (first.maps.strategy, second.maps.strategy),
        dimension: cube.dim(),
        differential_rank,
        homology_rank: cube.dim() - 2 * differential_rank,
        vertex_dims: Vertex::ALL
            .iter()
            .map(|&v| (v.label(), cube.vertex_dim(v)))
            .collect(),
        edge_ranks: cube
            .edges
            .iter()
            .map(|e| {
                (
                    format!("{} -> {} ({})", e.source.label(), e.target.label(), e.label),
                    e.matrix.rank(),
                )
            })
            .collect(),
    })
}

/// Rank of HF-hat of the splice of `k1` and `k2`, with the same `η̄` strategy on both sides.
pub fn splice_rank(
    k1: &FilteredKnotComplex,
    k2: &FilteredKnotComplex,
    eta: &EtaStrategy,
) -> Result<usize, SpliceError> {
    let a = KnotLevels::compute(k1, eta)?;
    let b = KnotLevels::compute(k2, eta)?;
    Ok(splice(&a, &b)?.homology_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::catalog;

    fn levels_of(name: &str, eta: &EtaStrategy) -> KnotLevels {
        KnotLevels::compute(&catalog(name).unwrap(), eta).unwrap()
    }

    #[test]
    fn unknot_with_unknot() {
        let u = levels_of("unknot", &EtaStrategy::default());
        let cube = build_cube(&u, &u).unwrap();
        assert_eq!(cube.dim(), 5);
        assert_eq!(cube.differential_rank(), 2);
        assert_eq!(cube.homology_rank(), 1);
        for v in [Vertex::ZeroZero, Vertex::OneZero, Vertex::ZeroOne] {
            assert_eq!(cube.vertex_dim(v), 0);
        }
    }

    #[test]
    fn trefoil_with_unknot_dimensions() {
        let t = levels_of("trefoil", &EtaStrategy::default());
        let u = levels_of("unknot", &EtaStrategy::default());
        let cube = build_cube(&t, &u).unwrap();
        assert_eq!(cube.dim(), 25);
        assert_eq!(cube.vertex_dim(Vertex::ZeroOne), 4);
        assert_eq!(cube.vertex_dim(Vertex::ZeroZero), 0);
        assert_eq!(cube.vertex_dim(Vertex::OneZero), 0);
        let eta = cube
            .edges()
            .iter()
            .find(|e| e.source == Vertex::ZeroZero && e.target == Vertex::InfInf)
            .unwrap();
        assert!(eta.matrix.is_zero());
        assert_eq!(cube.homology_rank(), 1);
    }

    #[test]
    fn reduction_preserves_rank() {
        for (a, b) in [("trefoil", "figure8"), ("trefoil-mirror", "trefoil-mirror"), ("unknot", "cinquefoil")] {
            for eta in [EtaStrategy::PhiPsi, EtaStrategy::PhiBarPsiBar, EtaStrategy::Zero] {
                let cube = build_cube(&levels_of(a, &eta), &levels_of(b, &eta)).unwrap();
                assert_eq!(cube.reduced_homology_rank(), cube.homology_rank(), "{a} {b} {}", eta.tag());
            }
        }
    }

    #[test]
    fn square_failure_names_the_path() {
        let mut t = levels_of("trefoil", &EtaStrategy::default());
        // break exactness: make φ̄ ∘ ψ nonzero
        t.maps.phibar = t.maps.phi.clone();
        let u = levels_of("trefoil", &EtaStrategy::default());
        match build_cube(&t, &u) {
            Err(SpliceError::NotAComplex { source, paths, .. }) => {
                assert_eq!(source, "00");
                assert!(paths.iter().any(|p| p.contains("φ̄⊗ψ̄")));
            }
            other => panic!("expected d_M² failure, got {other:?}"),
        }
    }
}
