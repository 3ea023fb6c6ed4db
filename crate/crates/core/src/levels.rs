//! Level groups `H_∞(K,s)`, `H_1(K,s)`, `H_0(K,s)` and the maps `φ, φ̄, ψ, ψ̄`
//! between them, plus the pluggable `η̄: H_0 → H_∞`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cfk::{FilteredKnotComplex, Slice, SliceMode};
use crate::cones::{self, ConeComplex, ConeError, LevelKind};
use crate::f2la::{self, F2Error, F2Matrix, HomologyPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelError {
    Cone(ConeError),
    Homology(F2Error),
    NotAChainMap { kind: MapKind, s: i32, source: F2Error },
    /// An internal invariant failed: a complex outside the support has homology.
    FringeNotAcyclic { complex: &'static str, s: i32, rank: usize },
    EtaShape { expected: (usize, usize), found: (usize, usize) },
    MissingMaslov,
}

impl fmt::Display for LevelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelError::Cone(e) => e.fmt(f),
            LevelError::Homology(e) => e.fmt(f),
            LevelError::NotAChainMap { kind, s, source } => {
                write!(f, "{kind} at s={s} is not a chain map ({source})")
            }
            LevelError::FringeNotAcyclic { complex, s, rank } => write!(
                f,
                "{complex} at s={s} lies outside the support but has homology of rank {rank}"
            ),
            LevelError::EtaShape { expected, found } => write!(
                f,
                "eta matrix must be {}x{} (H_inf x H_0), got {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            LevelError::MissingMaslov => f.write_str("maslov gradings are required"),
        }
    }
}

impl core::error::Error for LevelError {}

impl From<ConeError> for LevelError {
    fn from(e: ConeError) -> Self {
        LevelError::Cone(e)
    }
}

impl From<F2Error> for LevelError {
    fn from(e: F2Error) -> Self {
        LevelError::Homology(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Infinity,
    One,
    Zero,
}

impl Group {
    pub fn label(self) -> &'static str {
        match self {
            Group::Infinity => "Hinf",
            Group::One => "H1",
            Group::Zero => "H0",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Phi,
    PhiBar,
    Psi,
    PsiBar,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Phi => "phi",
            MapKind::PhiBar => "phibar",
            MapKind::Psi => "psi",
            MapKind::PsiBar => "psibar",
        })
    }
}

/// Homology presentations of the three level groups on `lo..=hi`.
#[derive(Clone, Debug)]
pub struct LevelGroups {
    lo: i32,
    hi: i32,
    graded: Vec<Slice>,
    one_complexes: Vec<ConeComplex>,
    zero_complexes: Vec<ConeComplex>,
    infinity: Vec<HomologyPresentation>,
    one: Vec<HomologyPresentation>,
    zero: Vec<HomologyPresentation>,
}

impl LevelGroups {
    /// Inclusive range of classes that were computed. The ends are outside the support.
    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn classes(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    fn idx(&self, s: i32) -> Option<usize> {
        (self.lo..=self.hi).contains(&s).then(|| (s - self.lo) as usize)
    }

    pub fn presentation(&self, group: Group, s: i32) -> Option<&HomologyPresentation> {
        let i = self.idx(s)?;
        Some(match group {
            Group::Infinity => &self.infinity[i],
            Group::One => &self.one[i],
            Group::Zero => &self.zero[i],
        })
    }

    /// The chain complex whose homology is the group at `s`.
    pub fn complex(&self, group: Group, s: i32) -> Option<&F2Matrix> {
        let i = self.idx(s)?;
        Some(match group {
            Group::Infinity => self.graded[i].differential(),
            Group::One => self.one_complexes[i].differential(),
            Group::Zero => self.zero_complexes[i].differential(),
        })
    }

    pub fn rank(&self, group: Group, s: i32) -> usize {
        self.presentation(group, s).map_or(0, HomologyPresentation::rank)
    }

    pub fn ranks(&self, group: Group) -> Vec<(i32, usize)> {
        self.classes().map(|s| (s, self.rank(group, s))).collect()
    }

    /// Ranks at classes where the group is nonzero.
    pub fn support(&self, group: Group) -> Vec<(i32, usize)> {
        self.ranks(group).into_iter().filter(|&(_, r)| r > 0).collect()
    }

    pub fn total(&self, group: Group) -> usize {
        self.classes().map(|s| self.rank(group, s)).sum()
    }

    /// Position of the first class at `s` in the total basis of `group`.
    pub fn offset(&self, group: Group, s: i32) -> usize {
        (self.lo..s.min(self.hi + 1)).map(|t| self.rank(group, t)).sum()
    }

    /// Labels `H1[s=0]#2` for every basis class, in total-basis order.
    pub fn class_labels(&self, group: Group) -> Vec<String> {
        self.classes()
            .flat_map(|s| {
                (0..self.rank(group, s)).map(move |i| format!("{}[s={s}]#{i}", group.label()))
            })
            .collect()
    }
}

/// Computes `H(B{s})`, `H(C_1(s))`, `H(C_0(s))` for `s` in `[−g−1, g+1]`.
pub fn level_groups(k: &FilteredKnotComplex) -> Result<LevelGroups, LevelError> {
    let g = k.genus_bound();
    let (lo, hi) = (-g - 1, g + 1);
    let mut out = LevelGroups {
        lo,
        hi,
        graded: Vec::new(),
        one_complexes: Vec::new(),
        zero_complexes: Vec::new(),
        infinity: Vec::new(),
        one: Vec::new(),
        zero: Vec::new(),
    };
    for s in lo..=hi {
        let graded = k.slice(s, SliceMode::Exactly);
        let c1 = cones::level_complex(k, LevelKind::One, s)?;
        let c0 = cones::level_complex(k, LevelKind::Zero, s)?;
        out.infinity.push(f2la::homology(graded.differential())?);
        out.one.push(f2la::homology(c1.differential())?);
        out.zero.push(f2la::homology(c0.differential())?);
        out.graded.push(graded);
        out.one_complexes.push(c1);
        out.zero_complexes.push(c0);
    }
    for s in [lo, hi] {
        for (group, name) in [(Group::One, "C_1"), (Group::Zero, "C_0")] {
            let rank = out.rank(group, s);
            if rank != 0 {
                return Err(LevelError::FringeNotAcyclic { complex: name, s, rank });
            }
        }
    }
    Ok(out)
}

/// A verified chain map between two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub kind: MapKind,
    pub s: i32,
    pub matrix: F2Matrix,
    pub source: F2Matrix,
    pub target: F2Matrix,
}

/// Chain-level `φ_s, φ̄_s: C_1(s) → B{s}`, `ψ_s: C_0(s−1) → C_1(s)`, `ψ̄_s: C_0(s) → C_1(s)`.
pub fn chain_map(k: &FilteredKnotComplex, kind: MapKind, s: i32) -> Result<ChainMap, LevelError> {
    let c1 = cones::level_complex(k, LevelKind::One, s)?;
    let (matrix, source, target) = match kind {
        MapKind::Phi | MapKind::PhiBar => {
            let graded = k.slice(s, SliceMode::Exactly);
            let mut m = F2Matrix::zeros(graded.dim(), c1.dim());
            match kind {
                MapKind::Phi => {
                    for (j, &g) in c1.left().members().iter().enumerate() {
                        if let Some(i) = graded.position(g) {
                            m.set(i, c1.left_range().start + j, true);
                        }
                    }
                }
                _ => {
                    let j_map = k.symmetry();
                    for (j, &g) in c1.right().members().iter().enumerate() {
                        if k.level(g) != -s {
                            continue;
                        }
                        // a witness that breaks level symmetry lands outside B{s}; drop it
                        // and let the chain-map check report the damage
                        if let Some(i) = graded.position(j_map[g]) {
                            m.set(i, c1.right_range().start + j, true);
                        }
                    }
                }
            }
            (m, c1.differential().clone(), graded.differential().clone())
        }
        MapKind::Psi | MapKind::PsiBar => {
            let c0 = match kind {
                MapKind::Psi => cones::level_complex(k, LevelKind::Zero, s - 1)?,
                _ => cones::level_complex(k, LevelKind::Zero, s)?,
            };
            let m = c0
                .inclusion_into(&c1)
                .expect("C_0 blocks are contained in the matching C_1 blocks");
            (m, c0.differential().clone(), c1.differential().clone())
        }
    };
    f2la::check_chain_map(&matrix, &source, &target)
        .map_err(|source| LevelError::NotAChainMap { kind, s, source })?;
    Ok(ChainMap {
        kind,
        s,
        matrix,
        source,
        target,
    })
}

/// How to fill the `H_0 → H_∞` edge of the splice cube.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum EtaStrategy {
    /// `φ* ∘ ψ*`
    #[default]
    PhiPsi,
    /// `φ̄* ∘ ψ̄*`
    PhiBarPsiBar,
    Zero,
    /// A user-supplied `H_∞ x H_0` matrix in the total class bases.
    Explicit(F2Matrix),
}

impl EtaStrategy {
    pub fn tag(&self) -> &'static str {
        match self {
            EtaStrategy::PhiPsi => "phi-psi",
            EtaStrategy::PhiBarPsiBar => "phibar-psibar",
            EtaStrategy::Zero => "zero",
            EtaStrategy::Explicit(_) => "explicit",
        }
    }

    pub const NAMED: [&'static str; 3] = ["phi-psi", "phibar-psibar", "zero"];
}

impl FromStr for EtaStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi-psi" => Ok(EtaStrategy::PhiPsi),
            "phibar-psibar" => Ok(EtaStrategy::PhiBarPsiBar),
            "zero" => Ok(EtaStrategy::Zero),
            other => Err(format!(
                "unknown eta strategy `{other}` (expected phi-psi, phibar-psibar, zero, or an explicit matrix)"
            )),
        }
    }
}

/// Induced maps for one class `s`.
#[derive(Clone, Debug)]
pub struct LevelBlock {
    pub s: i32,
    /// `H_1(s) → H_∞(s)`
    pub phi: F2Matrix,
    /// `H_1(s) → H_∞(s)`
    pub phibar: F2Matrix,
    /// `H_0(s−1) → H_1(s)`
    pub psi: F2Matrix,
    /// `H_0(s) → H_1(s)`
    pub psibar: F2Matrix,
}

/// Homology-level maps in the total class bases of [`LevelGroups`].
#[derive(Clone, Debug)]
pub struct LevelMaps {
    pub blocks: Vec<LevelBlock>,
    pub phi: F2Matrix,
    pub phibar: F2Matrix,
    pub psi: F2Matrix,
    pub psibar: F2Matrix,
    pub eta: F2Matrix,
    pub strategy: &'static str,
}

impl LevelMaps {
    pub fn get(&self, kind: MapKind) -> &F2Matrix {
        match kind {
            MapKind::Phi => &self.phi,
            MapKind::PhiBar => &self.phibar,
            MapKind::Psi => &self.psi,
            MapKind::PsiBar => &self.psibar,
        }
    }
}

/// Domain and codomain `(group, class)` of the block of `kind` at `s`.
pub fn block_endpoints(kind: MapKind, s: i32) -> ((Group, i32), (Group, i32)) {
    match kind {
        MapKind::Phi | MapKind::PhiBar => ((Group::One, s), (Group::Infinity, s)),
        MapKind::Psi => ((Group::Zero, s - 1), (Group::One, s)),
        MapKind::PsiBar => ((Group::Zero, s), (Group::One, s)),
    }
}

/// The induced map of `kind` at class `s`, in the class bases of `groups`.
pub fn induced_level_map(
    k: &FilteredKnotComplex,
    groups: &LevelGroups,
    kind: MapKind,
    s: i32,
) -> Result<F2Matrix, LevelError> {
    let (from, to) = block_endpoints(kind, s);
    let (Some(dom), Some(cod)) = (
        groups.presentation(from.0, from.1),
        groups.presentation(to.0, to.1),
    ) else {
        return Ok(F2Matrix::zeros(
            groups.rank(to.0, to.1),
            groups.rank(from.0, from.1),
        ));
    };
    let f = chain_map(k, kind, s)?;
    Ok(f2la::induced_map(&f.matrix, dom, cod)?)
}

/// Induced maps of `φ, φ̄, ψ, ψ̄` per class, assembled into total matrices,
/// and `η̄` according to `eta`.
pub fn level_maps(
    k: &FilteredKnotComplex,
    groups: &LevelGroups,
    eta: &EtaStrategy,
) -> Result<LevelMaps, LevelError> {
    let (ti, t1, t0) = (
        groups.total(Group::Infinity),
        groups.total(Group::One),
        groups.total(Group::Zero),
    );
    let mut maps = LevelMaps {
        blocks: Vec::new(),
        phi: F2Matrix::zeros(ti, t1),
        phibar: F2Matrix::zeros(ti, t1),
        psi: F2Matrix::zeros(t1, t0),
        psibar: F2Matrix::zeros(t1, t0),
        eta: F2Matrix::zeros(ti, t0),
        strategy: eta.tag(),
    };
    for s in groups.classes() {
        let block = LevelBlock {
            s,
            phi: induced_level_map(k, groups, MapKind::Phi, s)?,
            phibar: induced_level_map(k, groups, MapKind::PhiBar, s)?,
            psi: induced_level_map(k, groups, MapKind::Psi, s)?,
            psibar: induced_level_map(k, groups, MapKind::PsiBar, s)?,
        };
        let (oi, o1, o0) = (
            groups.offset(Group::Infinity, s),
            groups.offset(Group::One, s),
            groups.offset(Group::Zero, s),
        );
        maps.phi.add_block(oi, o1, &block.phi);
        maps.phibar.add_block(oi, o1, &block.phibar);
        maps.psibar.add_block(o1, o0, &block.psibar);
        if block.psi.ncols() > 0 {
            maps.psi.add_block(o1, groups.offset(Group::Zero, s - 1), &block.psi);
        }
        maps.blocks.push(block);
    }
    maps.eta = match eta {
        EtaStrategy::PhiPsi => maps.phi.mul(&maps.psi),
        EtaStrategy::PhiBarPsiBar => maps.phibar.mul(&maps.psibar),
        EtaStrategy::Zero => F2Matrix::zeros(ti, t0),
        EtaStrategy::Explicit(m) => {
            if m.shape() != (ti, t0) {
                return Err(LevelError::EtaShape {
                    expected: (ti, t0),
                    found: m.shape(),
                });
            }
            m.clone()
        }
    };
    Ok(maps)
}

/// Rank of `H(B{>s−n} → B ← B{≥−s})` for `s` in `[−g−n, g+n]`.
pub fn hfk_surgery(k: &FilteredKnotComplex, n: i32) -> Result<Vec<(i32, usize)>, LevelError> {
    if n < 1 {
        return Err(ConeError::UnsupportedFraming(n).into());
    }
    let g = k.genus_bound();
    let (lo, hi) = (-g - n, g + n);
    let mut table = Vec::new();
    for s in lo..=hi {
        let c = cones::surgery_complex(k, n, s)?;
        table.push((s, c.homology_rank()));
    }
    for &(s, rank) in [table[0], table[table.len() - 1]].iter() {
        if rank != 0 {
            return Err(LevelError::FringeNotAcyclic { complex: "surgery complex", s, rank });
        }
    }
    Ok(table)
}

/// Graded Euler characteristic of `B`, as a Laurent polynomial in the
/// Alexander variable `t` (exponent = −level).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    pub lowest: i32,
    pub coefficients: Vec<i64>,
}

impl AlexanderPolynomial {
    pub fn coefficient(&self, exponent: i32) -> i64 {
        usize::try_from(exponent - self.lowest)
            .ok()
            .and_then(|i| self.coefficients.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev()) && {
            let top = self.lowest + self.coefficients.len() as i32 - 1;
            self.lowest == -top
        }
    }

    /// Equality with `coefficients` (centred, lowest exponent first) up to global sign.
    pub fn matches_up_to_sign(&self, coefficients: &[i64]) -> bool {
        let lowest = -((coefficients.len() as i32 - 1) / 2);
        if self.lowest != lowest || self.coefficients.len() != coefficients.len() {
            return false;
        }
        let neg: Vec<i64> = coefficients.iter().map(|c| -c).collect();
        self.coefficients == coefficients || self.coefficients == neg
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.lowest + i as i32;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 && e != 0 { String::new() } else { format!("{mag}") };
            let sep = if first || sign.is_empty() { "" } else { " " };
            match e {
                0 => write!(f, "{sign}{sep}{coeff}")?,
                1 => write!(f, "{sign}{sep}{coeff}t")?,
                _ => write!(f, "{sign}{sep}{coeff}t^{e}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn alexander_polynomial(k: &FilteredKnotComplex) -> Result<AlexanderPolynomial, LevelError> {
    if !k.has_maslov() {
        return Err(LevelError::MissingMaslov);
    }
    let g = k.genus_bound();
    let mut coefficients = alloc::vec![0i64; (2 * g + 1) as usize];
    for gen in k.generators() {
        let exponent = -gen.level;
        let sign = if gen.maslov.unwrap().rem_euclid(2) == 0 { 1 } else { -1 };
        coefficients[(exponent + g) as usize] += sign;
    }
    Ok(AlexanderPolynomial {
        lowest: -g,
        coefficients,
    })
}

/// The direct sum over all computed classes of the chain maps of `kind`,
/// returned as `(map, source differential, target differential)`.
pub fn total_chain_map(
    k: &FilteredKnotComplex,
    groups: &LevelGroups,
    kind: MapKind,
) -> Result<(F2Matrix, F2Matrix, F2Matrix), LevelError> {
    let pieces = groups
        .classes()
        .map(|s| chain_map(k, kind, s))
        .collect::<Result<Vec<_>, _>>()?;
    let src: usize = pieces.iter().map(|p| p.source.nrows()).sum();
    let tgt: usize = pieces.iter().map(|p| p.target.nrows()).sum();
    let mut f = F2Matrix::zeros(tgt, src);
    let mut ds = F2Matrix::zeros(src, src);
    let mut dt = F2Matrix::zeros(tgt, tgt);
    let (mut r, mut c) = (0, 0);
    for p in &pieces {
        f.add_block(r, c, &p.matrix);
        ds.add_block(c, c, &p.source);
        dt.add_block(r, r, &p.target);
        r += p.target.nrows();
        c += p.source.nrows();
    }
    Ok((f, ds, dt))
}
