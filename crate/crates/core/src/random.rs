//! Seedable generator of valid filtered complexes for property testing.
//!
//! A complex is assembled from elementary pieces (the fixed generator `z`,
//! arrows `x → y` together with their mirrors, and free orbit pairs) and then
//! conjugated by a unipotent change of basis that strictly raises levels.
//! Conjugation keeps `∂² = 0` and monotonicity, and leaves the level-preserving
//! part of `∂` (hence the symmetry condition) untouched.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cfk::{CfkError, FilteredKnotComplex, Generator, Grading, RawComplex, ValidateOptions};
use crate::f2la::F2Matrix;

/// Levels are drawn from `-MAX_LEVEL..=MAX_LEVEL`.
pub const MAX_LEVEL: i32 = 3;

struct Builder {
    levels: Vec<i32>,
    mirror: Vec<usize>,
    arrows: Vec<(usize, usize)>,
}

impl Builder {
    fn push_orbit(&mut self, level: i32) -> (usize, usize) {
        let a = self.levels.len();
        self.levels.push(level);
        self.levels.push(-level);
        self.mirror.push(a + 1);
        self.mirror.push(a);
        (a, a + 1)
    }
}

/// A random valid complex with at most `max_generators` generators (at least 1).
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    name: &str,
    max_generators: usize,
) -> Result<FilteredKnotComplex, CfkError> {
    let budget = max_generators.max(1) - 1;
    let mut b = Builder {
        levels: alloc::vec![0],
        mirror: alloc::vec![0],
        arrows: Vec::new(),
    };
    let mut left = rng.random_range(0..=budget);
    while left >= 2 {
        let piece = if left >= 4 { rng.random_range(0..3) } else { 2 };
        match piece {
            // x -> y at the same level, mirrored at the opposite level
            0 => {
                let a = rng.random_range(-MAX_LEVEL..=MAX_LEVEL);
                let (x, jx) = b.push_orbit(a);
                let (y, jy) = b.push_orbit(a);
                b.arrows.push((x, y));
                b.arrows.push((jx, jy));
                left -= 4;
            }
            // x -> y raising the level; the mirror is Jy -> Jx
            1 => {
                let lo = rng.random_range(-MAX_LEVEL..MAX_LEVEL);
                let hi = rng.random_range(lo + 1..=MAX_LEVEL);
                let (x, jx) = b.push_orbit(lo);
                let (y, jy) = b.push_orbit(hi);
                b.arrows.push((x, y));
                b.arrows.push((jy, jx));
                left -= 4;
            }
            _ => {
                let a = rng.random_range(-MAX_LEVEL..=MAX_LEVEL);
                b.push_orbit(a);
                left -= 2;
            }
        }
    }

    let n = b.levels.len();
    let mut d = F2Matrix::zeros(n, n);
    for &(x, y) in &b.arrows {
        d.set(y, x, true);
    }
    // unipotent filtered change of basis A = I + N, N strictly raising levels
    let density = rng.random_range(0.0..0.4);
    let mut nil = F2Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            if b.levels[y] > b.levels[x] && rng.random_bool(density) {
                nil.set(y, x, true);
            }
        }
    }
    let a = F2Matrix::identity(n).add(&nil);
    let mut inverse = F2Matrix::identity(n);
    let mut power = nil.clone();
    while !power.is_zero() {
        inverse.add_assign(&power);
        power = power.mul(&nil);
    }
    let conjugated = a.mul(&d).mul(&inverse);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let id = |g: usize| -> String { format!("g{g}") };
    let raw = RawComplex {
        name: name.into(),
        grading: Grading::Level,
        generators: order
            .iter()
            .map(|&g| Generator {
                id: id(g),
                level: b.levels[g],
                maslov: None,
            })
            .collect(),
        arrows: conjugated.entries().map(|(to, from)| (id(from), id(to))).collect(),
        symmetry: Some((0..n).map(|g| (id(g), id(b.mirror[g]))).collect()),
    };
    raw.validate(ValidateOptions::default())
}
