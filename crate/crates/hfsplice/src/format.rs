//! The JSON file formats: complexes, symmetry witnesses and labelled matrices.
//!
//! Complexes are written in a fixed layout (one generator or pair per line) so
//! that `write_complex(parse_complex(text)) == text` for any file in that layout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hfsplice_core::cfk::{Generator, Grading};
use hfsplice_core::{F2Matrix, FilteredKnotComplex, RawComplex};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("generator `{id}`: {message}")]
    Generator { id: String, message: String },
    #[error("unknown grading `{0}` (expected `level` or `alexander`)")]
    Grading(String),
    #[error("{axis} labels do not match: expected [{}], found [{}]", expected.join(", "), found.join(", "))]
    Labels {
        axis: &'static str,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("unknown {axis} label `{label}`")]
    UnknownLabel { axis: &'static str, label: String },
    #[error("entry ({0}, {1}) listed twice")]
    DuplicateEntry(String, String),
    #[error("unknown generator `{0}` in witness")]
    WitnessId(String),
    #[error("witness does not give an image for `{0}`")]
    WitnessMissing(String),
    #[error("witness gives two images for `{0}`")]
    WitnessDuplicate(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    name: String,
    #[serde(default)]
    grading: Option<String>,
    generators: Vec<GeneratorEntry>,
    #[serde(default)]
    differential: Vec<(String, String)>,
    #[serde(default)]
    symmetry: Option<Vec<(String, String)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorEntry {
    id: String,
    #[serde(default)]
    level: Option<i32>,
    #[serde(default)]
    alex: Option<i32>,
    #[serde(default)]
    maslov: Option<i32>,
}

/// Parses a complex file. Levels are converted to the internal convention,
/// `level = -alex` for files marked `"grading": "alexander"`.
pub fn parse_complex(text: &str) -> Result<RawComplex, FormatError> {
    let file: ComplexFile = serde_json::from_str(text)?;
    let grading = match file.grading.as_deref() {
        None | Some("level") => Grading::Level,
        Some("alexander") => Grading::Alexander,
        Some(other) => return Err(FormatError::Grading(other.into())),
    };
    let generators = file
        .generators
        .into_iter()
        .map(|g| {
            let level = match (grading, g.level, g.alex) {
                (Grading::Level, Some(l), None) => l,
                (Grading::Alexander, None, Some(a)) => -a,
                (Grading::Level, _, _) => {
                    return Err(FormatError::Generator {
                        id: g.id,
                        message: "expected a `level` field and no `alex` field".into(),
                    })
                }
                (Grading::Alexander, _, _) => {
                    return Err(FormatError::Generator {
                        id: g.id,
                        message: "expected an `alex` field and no `level` field in an alexander-graded file".into(),
                    })
                }
            };
            Ok(Generator { id: g.id, level, maslov: g.maslov })
        })
        .collect::<Result<_, _>>()?;
    Ok(RawComplex {
        name: file.name,
        grading,
        generators,
        arrows: file.differential,
        symmetry: file.symmetry,
    })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn write_pairs(out: &mut String, key: &str, pairs: &[(String, String)], last: bool) {
    if pairs.is_empty() {
        let _ = write!(out, "  {}: []", quote(key));
    } else {
        let _ = writeln!(out, "  {}: [", quote(key));
        for (i, (a, b)) in pairs.iter().enumerate() {
            let sep = if i + 1 == pairs.len() { "" } else { "," };
            let _ = writeln!(out, "    [{}, {}]{sep}", quote(a), quote(b));
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Writes `raw` in the canonical layout.
pub fn write_complex(raw: &RawComplex) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"name\": {},", quote(&raw.name));
    let key = match raw.grading {
        Grading::Level => "level",
        Grading::Alexander => {
            out.push_str("  \"grading\": \"alexander\",\n");
            "alex"
        }
    };
    if raw.generators.is_empty() {
        out.push_str("  \"generators\": [],\n");
    } else {
        out.push_str("  \"generators\": [\n");
        for (i, g) in raw.generators.iter().enumerate() {
            let value = match raw.grading {
                Grading::Level => g.level,
                Grading::Alexander => -g.level,
            };
            let _ = write!(out, "    {{\"id\": {}, \"{key}\": {value}", quote(&g.id));
            if let Some(m) = g.maslov {
                let _ = write!(out, ", \"maslov\": {m}");
            }
            out.push('}');
            out.push_str(if i + 1 == raw.generators.len() { "\n" } else { ",\n" });
        }
        out.push_str("  ],\n");
    }
    write_pairs(&mut out, "differential", &raw.arrows, raw.symmetry.is_none());
    if let Some(sym) = &raw.symmetry {
        write_pairs(&mut out, "symmetry", sym, true);
    }
    out.push_str("}\n");
    out
}

/// A symmetry witness file: `{"name": ..., "symmetry": [[from, to], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    #[serde(default)]
    pub name: Option<String>,
    pub symmetry: Vec<(String, String)>,
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn of(k: &FilteredKnotComplex) -> Self {
        let id = |i: usize| k.generators()[i].id.clone();
        WitnessFile {
            name: Some(k.name().into()),
            symmetry: k.symmetry().iter().enumerate().map(|(a, &b)| (id(a), id(b))).collect(),
        }
    }

    /// The witness as an index permutation of the generators of `k`.
    pub fn permutation(&self, k: &FilteredKnotComplex) -> Result<Vec<usize>, FormatError> {
        let index: BTreeMap<&str, usize> = k
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.id.as_str(), i))
            .collect();
        let find = |id: &str| index.get(id).copied().ok_or_else(|| FormatError::WitnessId(id.into()));
        let mut j = vec![None; k.dim()];
        for (from, to) in &self.symmetry {
            let (a, b) = (find(from)?, find(to)?);
            if j[a].replace(b).is_some() {
                return Err(FormatError::WitnessDuplicate(from.clone()));
            }
        }
        j.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| FormatError::WitnessMissing(k.generators()[i].id.clone())))
            .collect()
    }
}

/// A GF(2) matrix with named rows and columns; `entries` lists the nonzero
/// positions as `[row, col]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub name: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<(String, String)>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn new(name: impl Into<String>, rows: Vec<String>, cols: Vec<String>, m: &F2Matrix) -> Self {
        assert_eq!(m.shape(), (rows.len(), cols.len()));
        let entries = m.entries().map(|(r, c)| (rows[r].clone(), cols[c].clone())).collect();
        MatrixFile { name: name.into(), rows, cols, entries }
    }

    /// The matrix, after checking that the labels are exactly `rows` and `cols`.
    pub fn to_matrix(&self, rows: &[String], cols: &[String]) -> Result<F2Matrix, FormatError> {
        for (axis, expected, found) in [("row", rows, &self.rows), ("column", cols, &self.cols)] {
            if expected != found.as_slice() {
                return Err(FormatError::Labels {
                    axis,
                    expected: expected.to_vec(),
                    found: found.clone(),
                });
            }
        }
        let position = |axis: &'static str, labels: &[String], label: &str| {
            labels.iter().position(|l| l == label).ok_or_else(|| FormatError::UnknownLabel {
                axis,
                label: label.into(),
            })
        };
        let mut m = F2Matrix::zeros(rows.len(), cols.len());
        for (r, c) in &self.entries {
            let (i, j) = (position("row", rows, r)?, position("column", cols, c)?);
            if m.get(i, j) {
                return Err(FormatError::DuplicateEntry(r.clone(), c.clone()));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }
}
