//! Bundled models of `B` for a few knots in `S³`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CfkError, FilteredKnotComplex, Generator, Grading, RawComplex, ValidateOptions};

struct Model {
    name: &'static str,
    grading: Grading,
    /// (id, level or alexander grading, maslov)
    generators: &'static [(&'static str, i32, i32)],
    arrows: &'static [(&'static str, &'static str)],
    symmetry: &'static [(&'static str, &'static str)],
}

const MODELS: &[Model] = &[
    Model {
        name: "unknot",
        grading: Grading::Level,
        generators: &[("x", 0, 0)],
        arrows: &[],
        symmetry: &[("x", "x")],
    },
    Model {
        name: "trefoil",
        grading: Grading::Level,
        generators: &[("u", -1, 0), ("v", 0, -1), ("w", 1, -2)],
        arrows: &[("u", "v")],
        symmetry: &[("u", "w"), ("v", "v"), ("w", "u")],
    },
    Model {
        name: "trefoil-mirror",
        grading: Grading::Level,
        generators: &[("u", -1, 2), ("v", 0, 1), ("w", 1, 0)],
        arrows: &[("v", "w")],
        symmetry: &[("u", "w"), ("v", "v"), ("w", "u")],
    },
    // Written in Alexander grading: a at A=1, b c x at A=0, e at A=-1.
    Model {
        name: "figure8",
        grading: Grading::Alexander,
        generators: &[("a", 1, 1), ("b", 0, 0), ("c", 0, 0), ("x", 0, 0), ("e", -1, -1)],
        arrows: &[("a", "b"), ("c", "e")],
        symmetry: &[("a", "e"), ("b", "c"), ("c", "b"), ("x", "x"), ("e", "a")],
    },
    Model {
        name: "cinquefoil",
        grading: Grading::Level,
        generators: &[("x0", -2, 0), ("x1", -1, -1), ("x2", 0, -2), ("x3", 1, -3), ("x4", 2, -4)],
        arrows: &[("x0", "x1"), ("x2", "x3")],
        symmetry: &[("x0", "x4"), ("x1", "x3"), ("x2", "x2"), ("x3", "x1"), ("x4", "x0")],
    },
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    MODELS.iter().map(|m| m.name)
}

/// The bundled model called `name`, or `None`.
pub fn catalog(name: &str) -> Option<FilteredKnotComplex> {
    let m = MODELS.iter().find(|m| m.name == name)?;
    let pairs = |p: &[(&str, &str)]| -> Vec<(String, String)> {
        p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    let sign = match m.grading {
        Grading::Level => 1,
        Grading::Alexander => -1,
    };
    let raw = RawComplex {
        name: m.name.into(),
        grading: m.grading,
        generators: m
            .generators
            .iter()
            .map(|&(id, level, maslov)| Generator {
                id: id.into(),
                level: sign * level,
                maslov: Some(maslov),
            })
            .collect(),
        arrows: pairs(m.arrows),
        symmetry: Some(pairs(m.symmetry)),
    };
    Some(raw.validate(ValidateOptions::default()).unwrap_or_else(|e: CfkError| {
        panic!("bundled model `{}` is invalid: {e}", m.name)
    }))
}
