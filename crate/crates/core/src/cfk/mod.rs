//! Filtered knot complexes: the ambient complex `B` with its filtration levels,
//! validation, and subcomplex/graded slices.

mod catalog;
mod slice;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::f2la::F2Matrix;

pub use catalog::{catalog, catalog_names};
pub use slice::{Slice, SliceMode};

/// How levels are written in an input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Grading {
    /// Internal level, differential non-decreasing.
    #[default]
    Level,
    /// Alexander grading, differential non-increasing; level = -alexander.
    Alexander,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub level: i32,
    pub maslov: Option<i32>,
}

/// Unvalidated complex data with string ids, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawComplex {
    pub name: String,
    pub grading: Grading,
    pub generators: Vec<Generator>,
    pub arrows: Vec<(String, String)>,
    pub symmetry: Option<Vec<(String, String)>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Build the symmetry by level matching when none is given.
    pub infer_symmetry: bool,
    /// Keep a given symmetry that is a bijection but fails the level,
    /// involution or chain-map checks, so that `check_invariants` and the
    /// check battery can report on it.
    pub lenient_symmetry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfkError {
    DuplicateId(String),
    UnknownId { context: &'static str, id: String },
    SelfLoop(String),
    DuplicateArrow { from: String, to: String },
    Monotonicity { from: String, to: String, from_level: i32, to_level: i32 },
    /// The coefficient of `to` in `∂²(from)` is nonzero.
    DifferentialSquaresNonzero { from: String, to: String },
    MaslovPartial(String),
    MaslovStep { from: String, to: String, from_maslov: i32, to_maslov: i32 },
    MissingSymmetry,
    SymmetryNotBijection(String),
    SymmetryLevel { id: String, image: String, level: i32, image_level: i32 },
    SymmetryNotInvolution(String),
    SymmetryNotChainMap { from: String, to: String },
    SymmetryInference { level: i32, count: usize, mirror_count: usize },
    SymmetryInferenceNotRigid { from: String, to: String },
    EvenHomology(usize),
}

impl fmt::Display for CfkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CfkError::*;
        match self {
            DuplicateId(id) => write!(f, "duplicate generator id `{id}`"),
            UnknownId { context, id } => write!(f, "unknown generator `{id}` in {context}"),
            SelfLoop(id) => write!(f, "arrow from `{id}` to itself"),
            DuplicateArrow { from, to } => write!(f, "arrow `{from}` -> `{to}` listed twice"),
            Monotonicity { from, to, from_level, to_level } => write!(
                f,
                "arrow `{from}` -> `{to}` decreases the level ({from_level} -> {to_level})"
            ),
            DifferentialSquaresNonzero { from, to } => {
                write!(f, "∂² ≠ 0: `{to}` appears in ∂²(`{from}`)")
            }
            MaslovPartial(id) => write!(
                f,
                "maslov gradings must be given for all generators or none (`{id}` differs)"
            ),
            MaslovStep { from, to, from_maslov, to_maslov } => write!(
                f,
                "arrow `{from}` -> `{to}` changes maslov {from_maslov} -> {to_maslov}, expected a drop of 1"
            ),
            MissingSymmetry => f.write_str("no symmetry given (use symmetry inference for level-rigid complexes)"),
            SymmetryNotBijection(id) => write!(f, "symmetry is not a bijection at `{id}`"),
            SymmetryLevel { id, image, level, image_level } => write!(
                f,
                "symmetry sends `{id}` (level {level}) to `{image}` (level {image_level}), expected level {}",
                -level
            ),
            SymmetryNotInvolution(id) => write!(f, "symmetry applied twice moves `{id}`"),
            SymmetryNotChainMap { from, to } => write!(
                f,
                "level-preserving arrow `{from}` -> `{to}` has no mirrored arrow under the symmetry"
            ),
            SymmetryInference { level, count, mirror_count } => write!(
                f,
                "cannot infer symmetry: {count} generators at level {level} but {mirror_count} at level {}",
                -level
            ),
            SymmetryInferenceNotRigid { from, to } => write!(
                f,
                "cannot infer symmetry: level-preserving arrow `{from}` -> `{to}`"
            ),
            EvenHomology(r) => write!(f, "total homology has even rank {r}, expected odd"),
        }
    }
}

impl core::error::Error for CfkError {}

/// A validated filtered complex `B` over GF(2).
#[derive(Clone, Debug)]
pub struct FilteredKnotComplex {
    name: String,
    grading: Grading,
    generators: Vec<Generator>,
    arrows: Vec<(usize, usize)>,
    symmetry: Vec<usize>,
    differential: F2Matrix,
}

impl RawComplex {
    pub fn validate(self, opts: ValidateOptions) -> Result<FilteredKnotComplex, CfkError> {
        let mut index = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(CfkError::DuplicateId(g.id.clone()));
            }
        }
        let lookup = |context: &'static str, id: &str| {
            index.get(id).copied().ok_or_else(|| CfkError::UnknownId {
                context,
                id: id.into(),
            })
        };

        let n = self.generators.len();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut differential = F2Matrix::zeros(n, n);
        for (from, to) in &self.arrows {
            let a = lookup("differential", from)?;
            let b = lookup("differential", to)?;
            if a == b {
                return Err(CfkError::SelfLoop(from.clone()));
            }
            if differential.get(b, a) {
                return Err(CfkError::DuplicateArrow {
                    from: from.clone(),
                    to: to.clone(),
                });
            }
            differential.set(b, a, true);
            arrows.push((a, b));
        }

        let gens = &self.generators;
        for &(a, b) in &arrows {
            if gens[b].level < gens[a].level {
                return Err(CfkError::Monotonicity {
                    from: gens[a].id.clone(),
                    to: gens[b].id.clone(),
                    from_level: gens[a].level,
                    to_level: gens[b].level,
                });
            }
        }
        if let Some((to, from)) = differential.mul(&differential).entries().next() {
            return Err(CfkError::DifferentialSquaresNonzero {
                from: gens[from].id.clone(),
                to: gens[to].id.clone(),
            });
        }

        let with_maslov = gens.iter().filter(|g| g.maslov.is_some()).count();
        if with_maslov != 0 && with_maslov != n {
            let odd = gens
                .iter()
                .find(|g| g.maslov.is_none() == (with_maslov > n / 2))
                .expect("mixed maslov data");
            return Err(CfkError::MaslovPartial(odd.id.clone()));
        }
        if with_maslov == n {
            for &(a, b) in &arrows {
                let (ma, mb) = (gens[a].maslov.unwrap(), gens[b].maslov.unwrap());
                if ma - mb != 1 {
                    return Err(CfkError::MaslovStep {
                        from: gens[a].id.clone(),
                        to: gens[b].id.clone(),
                        from_maslov: ma,
                        to_maslov: mb,
                    });
                }
            }
        }

        let symmetry = match &self.symmetry {
            Some(pairs) => {
                let mut j = alloc::vec![usize::MAX; n];
                for (from, to) in pairs {
                    let a = lookup("symmetry", from)?;
                    let b = lookup("symmetry", to)?;
                    if j[a] != usize::MAX {
                        return Err(CfkError::SymmetryNotBijection(from.clone()));
                    }
                    j[a] = b;
                }
                if let Some(missing) = j.iter().position(|&x| x == usize::MAX) {
                    return Err(CfkError::SymmetryNotBijection(gens[missing].id.clone()));
                }
                j
            }
            None if opts.infer_symmetry => infer_symmetry(gens, &arrows)?,
            None => return Err(CfkError::MissingSymmetry),
        };
        if opts.lenient_symmetry {
            check_bijection(gens, &symmetry)?;
        } else {
            check_symmetry(gens, &arrows, &differential, &symmetry)?;
        }

        let k = FilteredKnotComplex {
            name: self.name,
            grading: self.grading,
            generators: self.generators,
            arrows,
            symmetry,
            differential,
        };
        let total = k.homology_rank();
        if total.is_multiple_of(2) {
            return Err(CfkError::EvenHomology(total));
        }
        Ok(k)
    }
}

fn check_symmetry(
    gens: &[Generator],
    arrows: &[(usize, usize)],
    differential: &F2Matrix,
    j: &[usize],
) -> Result<(), CfkError> {
    check_bijection(gens, j)?;
    for (x, &jx) in j.iter().enumerate() {
        if gens[jx].level != -gens[x].level {
            return Err(CfkError::SymmetryLevel {
                id: gens[x].id.clone(),
                image: gens[jx].id.clone(),
                level: gens[x].level,
                image_level: gens[jx].level,
            });
        }
        if j[jx] != x {
            return Err(CfkError::SymmetryNotInvolution(gens[x].id.clone()));
        }
    }
    for &(a, b) in arrows {
        if gens[a].level == gens[b].level && !differential.get(j[b], j[a]) {
            return Err(CfkError::SymmetryNotChainMap {
                from: gens[a].id.clone(),
                to: gens[b].id.clone(),
            });
        }
    }
    Ok(())
}

fn check_bijection(gens: &[Generator], j: &[usize]) -> Result<(), CfkError> {
    let mut seen = alloc::vec![false; j.len()];
    for &image in j {
        if core::mem::replace(&mut seen[image], true) {
            return Err(CfkError::SymmetryNotBijection(gens[image].id.clone()));
        }
    }
    Ok(())
}

/// Pairs generators at levels `s` and `-s` in listed order. Requires every
/// arrow to strictly raise the level.
fn infer_symmetry(gens: &[Generator], arrows: &[(usize, usize)]) -> Result<Vec<usize>, CfkError> {
    if let Some(&(a, b)) = arrows.iter().find(|&&(a, b)| gens[a].level == gens[b].level) {
        return Err(CfkError::SymmetryInferenceNotRigid {
            from: gens[a].id.clone(),
            to: gens[b].id.clone(),
        });
    }
    let mut by_level: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        by_level.entry(g.level).or_default().push(i);
    }
    let mut j = alloc::vec![0; gens.len()];
    for (&level, members) in &by_level {
        let mirror = by_level.get(&-level).map_or(&[][..], Vec::as_slice);
        if mirror.len() != members.len() {
            return Err(CfkError::SymmetryInference {
                level,
                count: members.len(),
                mirror_count: mirror.len(),
            });
        }
        for (&x, &y) in members.iter().zip(mirror) {
            j[x] = y;
        }
    }
    Ok(j)
}

impl FilteredKnotComplex {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn level(&self, i: usize) -> i32 {
        self.generators[i].level
    }

    /// Arrows `(from, to)` as generator indices, in input order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The symmetry witness `J` as an index permutation.
    pub fn symmetry(&self) -> &[usize] {
        &self.symmetry
    }

    /// `∂` as a matrix: entry `(to, from)` is 1 for every arrow.
    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    /// `max |level|` over generators.
    pub fn genus_bound(&self) -> i32 {
        self.generators.iter().map(|g| g.level.abs()).max().unwrap_or(0)
    }

    pub fn has_maslov(&self) -> bool {
        !self.generators.is_empty() && self.generators.iter().all(|g| g.maslov.is_some())
    }

    pub fn homology_rank(&self) -> usize {
        self.dim() - 2 * self.differential.rank()
    }

    pub fn slice(&self, s: i32, mode: SliceMode) -> Slice {
        Slice::new(self, s, mode)
    }

    /// Replaces the symmetry witness after checking it against all invariants.
    pub fn with_symmetry(mut self, symmetry: Vec<usize>) -> Result<Self, CfkError> {
        if symmetry.len() != self.dim() || symmetry.iter().any(|&x| x >= self.dim()) {
            return Err(CfkError::SymmetryNotBijection(String::from("<witness length>")));
        }
        check_symmetry(&self.generators, &self.arrows, &self.differential, &symmetry)?;
        self.symmetry = symmetry;
        Ok(self)
    }

    /// Replaces the symmetry witness with no checks at all. Only for building
    /// deliberately broken fixtures.
    #[doc(hidden)]
    pub fn with_symmetry_unchecked(mut self, symmetry: Vec<usize>) -> Self {
        assert_eq!(symmetry.len(), self.dim());
        self.symmetry = symmetry;
        self
    }

    /// Converts back to string-keyed data; `validate` of the result gives `self` back.
    pub fn to_raw(&self) -> RawComplex {
        let id = |i: usize| self.generators[i].id.clone();
        RawComplex {
            name: self.name.clone(),
            grading: self.grading,
            generators: self.generators.clone(),
            arrows: self.arrows.iter().map(|&(a, b)| (id(a), id(b))).collect(),
            symmetry: Some(
                self.symmetry
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| (id(a), id(b)))
                    .collect(),
            ),
        }
    }

    /// Re-runs the chain-level checks that do not depend on input parsing.
    pub fn check_invariants(&self) -> Result<(), CfkError> {
        self.to_raw().validate(ValidateOptions::default()).map(|_| ())
    }
}

/// `∂ ∘ ∂ = 0`, via the packed engine.
pub fn squares_to_zero(d: &F2Matrix) -> bool {
    d.mul(d).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn g(id: &str, level: i32, maslov: Option<i32>) -> Generator {
        Generator { id: id.into(), level, maslov }
    }

    fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
        p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn trefoil_raw() -> RawComplex {
        RawComplex {
            name: "trefoil".into(),
            grading: Grading::Level,
            generators: vec![g("u", -1, Some(0)), g("v", 0, Some(-1)), g("w", 1, Some(-2))],
            arrows: pairs(&[("u", "v")]),
            symmetry: Some(pairs(&[("u", "w"), ("v", "v"), ("w", "u")])),
        }
    }

    #[test]
    fn trefoil_validates() {
        let k = trefoil_raw().validate(ValidateOptions::default()).unwrap();
        assert_eq!(k.dim(), 3);
        assert_eq!(k.homology_rank(), 1);
        assert_eq!(k.symmetry(), &[2, 1, 0]);
    }

    #[test]
    fn unknot_validates() {
        let raw = RawComplex {
            name: "unknot".into(),
            generators: vec![g("x", 0, None)],
            symmetry: Some(pairs(&[("x", "x")])),
            ..Default::default()
        };
        let k = raw.validate(ValidateOptions::default()).unwrap();
        assert_eq!(k.homology_rank(), 1);
        assert!(!k.has_maslov());
    }

    #[test]
    fn decreasing_arrow_rejected() {
        let mut raw = trefoil_raw();
        raw.arrows = pairs(&[("w", "v")]);
        assert!(matches!(
            raw.validate(ValidateOptions::default()),
            Err(CfkError::Monotonicity { from_level: 1, to_level: 0, .. })
        ));
    }

    #[test]
    fn structural_errors_name_the_culprit() {
        let mut raw = trefoil_raw();
        raw.generators.push(g("u", 0, Some(0)));
        assert_eq!(
            raw.validate(ValidateOptions::default()).unwrap_err(),
            CfkError::DuplicateId("u".into())
        );

        let mut raw = trefoil_raw();
        raw.arrows.push(("u".into(), "q".into()));
        assert!(matches!(
            raw.validate(ValidateOptions::default()),
            Err(CfkError::UnknownId { id, .. }) if id == "q"
        ));

        let mut raw = trefoil_raw();
        raw.arrows.push(("u".into(), "v".into()));
        assert!(matches!(
            raw.validate(ValidateOptions::default()),
            Err(CfkError::DuplicateArrow { .. })
        ));
    }

    #[test]
    fn nonzero_square_rejected() {
        let raw = RawComplex {
            name: "bad".into(),
            generators: vec![g("a", -1, None), g("b", 0, None), g("c", 1, None)],
            arrows: pairs(&[("a", "b"), ("b", "c")]),
            symmetry: Some(pairs(&[("a", "c"), ("b", "b"), ("c", "a")])),
            ..Default::default()
        };
        assert_eq!(
            raw.validate(ValidateOptions::default()).unwrap_err(),
            CfkError::DifferentialSquaresNonzero { from: "a".into(), to: "c".into() }
        );
    }

    #[test]
    fn maslov_step_checked() {
        let mut raw = trefoil_raw();
        raw.generators[1].maslov = Some(0);
        assert!(matches!(
            raw.validate(ValidateOptions::default()),
            Err(CfkError::MaslovStep { .. })
        ));
        let mut raw = trefoil_raw();
        raw.generators[2].maslov = None;
        assert_eq!(
            raw.validate(ValidateOptions::default()).unwrap_err(),
            CfkError::MaslovPartial("w".into())
        );
    }

    #[test]
    fn symmetry_errors() {
        let mut raw = trefoil_raw();
        raw.symmetry = None;
        assert_eq!(
            raw.clone().validate(ValidateOptions::default()).unwrap_err(),
            CfkError::MissingSymmetry
        );
        let k = raw.validate(ValidateOptions { infer_symmetry: true, ..Default::default() }).unwrap();
        assert_eq!(k.symmetry(), &[2, 1, 0]);

        let mut raw = trefoil_raw();
        raw.symmetry = Some(pairs(&[("u", "v"), ("v", "u"), ("w", "w")]));
        assert!(matches!(
            raw.validate(ValidateOptions::default()),
            Err(CfkError::SymmetryLevel { .. })
        ));

        let mut raw = trefoil_raw();
        raw.symmetry = Some(pairs(&[("u", "w"), ("v", "v")]));
        assert_eq!(
            raw.validate(ValidateOptions::default()).unwrap_err(),
            CfkError::SymmetryNotBijection("w".into())
        );
    }

    #[test]
    fn symmetry_must_respect_level_preserving_arrows() {
        // z at 0; p -> q at level 1; p' -> q' at level -1
        let base = RawComplex {
            name: "boxes".into(),
            generators: vec![
                g("z", 0, None),
                g("p", 1, None),
                g("q", 1, None),
                g("p'", -1, None),
                g("q'", -1, None),
            ],
            arrows: pairs(&[("p", "q"), ("p'", "q'")]),
            symmetry: Some(pairs(&[("z", "z"), ("p", "p'"), ("p'", "p"), ("q", "q'"), ("q'", "q")])),
            ..Default::default()
        };
        assert!(base.clone().validate(ValidateOptions::default()).is_ok());

        let mut broken = base.clone();
        broken.symmetry =
            Some(pairs(&[("z", "z"), ("p", "q'"), ("q'", "p"), ("q", "p'"), ("p'", "q")]));
        assert!(matches!(
            broken.validate(ValidateOptions::default()),
            Err(CfkError::SymmetryNotChainMap { .. })
        ));

        let mut inferred = base;
        inferred.symmetry = None;
        assert!(matches!(
            inferred.validate(ValidateOptions { infer_symmetry: true, ..Default::default() }),
            Err(CfkError::SymmetryInferenceNotRigid { .. })
        ));
    }

    #[test]
    fn inference_fails_on_unbalanced_levels() {
        let raw = RawComplex {
            name: "lopsided".into(),
            generators: vec![g("a", 0, None), g("b", 1, None), g("c", 1, None), g("d", -1, None)],
            arrows: pairs(&[("a", "b")]),
            symmetry: None,
            ..Default::default()
        };
        assert!(matches!(
            raw.validate(ValidateOptions { infer_symmetry: true, ..Default::default() }),
            Err(CfkError::SymmetryInference { .. })
        ));
    }

    #[test]
    fn even_homology_rejected() {
        let raw = RawComplex {
            name: "two".into(),
            generators: vec![g("a", 0, None), g("b", 0, None)],
            symmetry: Some(pairs(&[("a", "a"), ("b", "b")])),
            ..Default::default()
        };
        assert_eq!(
            raw.validate(ValidateOptions::default()).unwrap_err(),
            CfkError::EvenHomology(2)
        );
    }

    #[test]
    fn raw_round_trip() {
        let k = trefoil_raw().validate(ValidateOptions::default()).unwrap();
        assert_eq!(k.to_raw(), trefoil_raw());
    }

    #[test]
    fn lenient_symmetry_defers_checks() {
        let pair = |a: &str, b: &str| (a.to_string(), b.to_string());
        let raw = RawComplex {
            name: "boxes".into(),
            grading: Grading::Level,
            generators: vec![
                g("z", 0, None),
                g("p", 1, None),
                g("q", 1, None),
                g("p'", -1, None),
                g("q'", -1, None),
            ],
            arrows: vec![pair("p", "q"), pair("p'", "q'")],
            symmetry: Some(vec![
                pair("z", "z"),
                pair("p", "q'"),
                pair("q'", "p"),
                pair("q", "p'"),
                pair("p'", "q"),
            ]),
        };
        assert!(matches!(
            raw.clone().validate(ValidateOptions::default()),
            Err(CfkError::SymmetryNotChainMap { .. })
        ));
        let lenient = ValidateOptions { lenient_symmetry: true, ..Default::default() };
        let k = raw.clone().validate(lenient).unwrap();
        assert_eq!(k.symmetry(), &[0, 4, 3, 2, 1]);
        assert!(k.check_invariants().is_err());

        let mut twice = raw;
        twice.symmetry.as_mut().unwrap()[1] = pair("p", "p'");
        assert!(matches!(
            twice.validate(lenient),
            Err(CfkError::SymmetryNotBijection(_))
        ));
    }
}
