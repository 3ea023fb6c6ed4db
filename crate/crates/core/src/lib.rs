//! Heegaard Floer ranks of splices and integer surgeries, computed from the
//! filtered knot complex of each knot over GF(2).
//!
//! The pipeline is: a validated [`cfk::FilteredKnotComplex`] `B`; its level
//! complexes `C_1(s)`, `C_0(s)` and surgery complexes ([`cones`]); the level
//! groups `H_∞, H_1, H_0` with the maps `φ, φ̄, ψ, ψ̄` ([`levels`]); and the
//! eight-vertex cube whose homology is HF-hat of the splice ([`splice`]).
//!
//! Everything here is `no_std` with `alloc`; file formats and the command line
//! live in the `hfsplice` crate.
#![no_std]

extern crate alloc;

pub mod cfk;
pub mod checks;
pub mod cones;
pub mod f2la;
pub mod levels;
pub mod random;
pub mod splice;

pub use cfk::{FilteredKnotComplex, RawComplex, ValidateOptions};
pub use f2la::{BitVec, F2Matrix, HomologyPresentation};
pub use levels::EtaStrategy;
