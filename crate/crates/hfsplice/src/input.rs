//! Reading complexes from disk or from the bundled catalog.

use std::fs;

use hfsplice_core::cfk::ValidateOptions;
use hfsplice_core::FilteredKnotComplex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::{self, WitnessFile};
use crate::Error;

/// Prefix selecting a bundled complex instead of a file, as in `builtin:trefoil`.
pub const BUILTIN_PREFIX: &str = "builtin:";

/// The bundled complexes, in canonical layout.
pub const BUNDLED: [(&str, &str); 5] = [
    ("unknot", include_str!("../data/unknot.json")),
    ("trefoil", include_str!("../data/trefoil.json")),
    ("trefoil-mirror", include_str!("../data/trefoil-mirror.json")),
    ("figure8", include_str!("../data/figure8.json")),
    ("cinquefoil", include_str!("../data/cinquefoil.json")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

pub struct Input {
    pub digest: InputDigest,
    pub text: String,
}

pub fn read(source: &str) -> Result<Input, Error> {
    let text = match source.strip_prefix(BUILTIN_PREFIX) {
        Some(name) => bundled(name)
            .ok_or_else(|| {
                let names: Vec<_> = BUNDLED.iter().map(|(n, _)| *n).collect();
                Error::Usage(format!("no bundled complex `{name}` (have {})", names.join(", ")))
            })?
            .to_owned(),
        None => fs::read_to_string(source).map_err(|error| Error::Io {
            path: source.into(),
            error,
        })?,
    };
    let sha256 = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok(Input {
        digest: InputDigest { source: source.into(), sha256 },
        text,
    })
}

/// Parses and validates `input`. Invalid complexes are input errors here;
/// `validate` reports them as check failures instead.
pub fn complex(input: &Input, opts: ValidateOptions) -> Result<FilteredKnotComplex, Error> {
    let source = || input.digest.source.clone();
    let raw = format::parse_complex(&input.text).map_err(|error| Error::Format {
        path: source(),
        error,
    })?;
    raw.validate(opts).map_err(|error| Error::Complex { path: source(), error })
}

/// Replaces the symmetry of `k` by the one in `witness`, with all checks.
pub fn with_witness(k: FilteredKnotComplex, witness: &Input) -> Result<FilteredKnotComplex, Error> {
    let source = || witness.digest.source.clone();
    let w = WitnessFile::parse(&witness.text)
        .and_then(|w| w.permutation(&k))
        .map_err(|error| Error::Format { path: source(), error })?;
    k.with_symmetry(w).map_err(|error| Error::Complex { path: source(), error })
}
