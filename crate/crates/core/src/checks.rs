//! The invariant battery run by `selftest`: every property the level data
//! must satisfy, evaluated on one complex.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::cfk::{self, FilteredKnotComplex, SliceMode};
use crate::cones::{self, LevelKind};
use crate::f2la::{self, naive, F2Matrix};
use crate::levels::{self, EtaStrategy, Group, LevelError, LevelGroups, MapKind};
use crate::splice::{self, KnotLevels};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, passed: true, detail: detail.into() }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Check { name, passed: false, detail: detail.into() }
    }

    fn from_failures(name: &'static str, ok: &str, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Check::pass(name, ok)
        } else {
            Check::fail(name, failures.join("; "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub complex: String,
    pub checks: Vec<Check>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn to_bytes(m: &F2Matrix) -> Vec<Vec<u8>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

/// `dim V − 2·rank d` from the packed engine against the naive oracle.
fn oracle_agrees(d: &F2Matrix) -> Result<usize, String> {
    let packed = f2la::homology(d).map_err(|e| e.to_string())?.rank();
    let bytes = to_bytes(d);
    if naive::product(&bytes, &bytes).iter().flatten().any(|&x| x != 0) {
        return Err("oracle finds d² ≠ 0".into());
    }
    let oracle = naive::homology_dim(&bytes);
    if packed == oracle {
        Ok(packed)
    } else {
        Err(format!("packed rank {packed} vs oracle {oracle}"))
    }
}

struct MapTable {
    blocks: Vec<(MapKind, i32, Result<F2Matrix, LevelError>)>,
}

impl MapTable {
    fn get(&self, kind: MapKind, s: i32) -> Result<&F2Matrix, String> {
        self.blocks
            .iter()
            .find(|(k, t, _)| *k == kind && *t == s)
            .map(|(_, _, m)| m.as_ref().map_err(|e| e.to_string()))
            .unwrap_or_else(|| Err(format!("{kind} at s={s} not computed")))
    }

    fn total_rank(&self, kind: MapKind) -> Result<usize, String> {
        let mut sum = 0;
        for (k, _, m) in &self.blocks {
            if *k == kind {
                sum += m.as_ref().map_err(|e| e.to_string())?.rank();
            }
        }
        Ok(sum)
    }
}

/// Runs every check on `k`. Never panics on a bad complex; failures are reported.
pub fn run_battery(k: &FilteredKnotComplex) -> BatteryReport {
    let mut checks = Vec::new();
    checks.push(match k.check_invariants() {
        Ok(()) => Check::pass("complex-invariants", "ids, monotonicity, ∂²=0, maslov, symmetry, odd rank"),
        Err(e) => Check::fail("complex-invariants", e.to_string()),
    });

    let groups = match levels::level_groups(k) {
        Ok(g) => g,
        Err(e) => {
            checks.push(Check::fail("level-groups", e.to_string()));
            return BatteryReport { complex: k.name().into(), checks };
        }
    };
    let (lo, hi) = groups.range();
    checks.push(Check::pass(
        "level-groups",
        format!(
            "classes {lo}..={hi}; totals Hinf={} H1={} H0={}; fringes acyclic",
            groups.total(Group::Infinity),
            groups.total(Group::One),
            groups.total(Group::Zero)
        ),
    ));

    checks.push(check_oracle(k, &groups));
    checks.push(check_slices(k, &groups));
    checks.push(check_infinity_symmetry(&groups));

    let table = MapTable {
        blocks: groups
            .classes()
            .flat_map(|s| {
                [MapKind::Phi, MapKind::PhiBar, MapKind::Psi, MapKind::PsiBar]
                    .into_iter()
                    .map(move |kind| (kind, s))
            })
            .map(|(kind, s)| (kind, s, levels::induced_level_map(k, &groups, kind, s)))
            .collect(),
    };
    checks.push(check_exactness(&groups, &table, MapKind::Phi, MapKind::PsiBar, "exactness-phi"));
    checks.push(check_exactness(&groups, &table, MapKind::PhiBar, MapKind::Psi, "exactness-phibar"));
    checks.push(check_cone_identities(&groups, &table));
    checks.push(check_cone_agreement(k, &groups, &table));
    checks.push(check_surgery(k, &groups));
    checks.push(check_splice_with_unknot(k));
    checks.push(check_alexander(k));
    BatteryReport { complex: k.name().into(), checks }
}

fn check_oracle(k: &FilteredKnotComplex, groups: &LevelGroups) -> Check {
    let mut failures = Vec::new();
    let mut compared = 1;
    if let Err(e) = oracle_agrees(k.differential()) {
        failures.push(format!("B: {e}"));
    }
    for s in groups.classes() {
        for group in [Group::Infinity, Group::One, Group::Zero] {
            compared += 1;
            let d = groups.complex(group, s).expect("class in range");
            match oracle_agrees(d) {
                Ok(r) if r == groups.rank(group, s) => {}
                Ok(r) => failures.push(format!("{}[s={s}]: oracle {r}", group.label())),
                Err(e) => failures.push(format!("{}[s={s}]: {e}", group.label())),
            }
        }
    }
    Check::from_failures(
        "homology-oracle",
        &format!("{compared} complexes agree with dense elimination"),
        failures,
    )
}

fn check_slices(k: &FilteredKnotComplex, groups: &LevelGroups) -> Check {
    let mut failures = Vec::new();
    let (lo, hi) = groups.range();
    for s in lo - 1..=hi + 1 {
        for mode in [SliceMode::AtLeast, SliceMode::Above] {
            let sl = k.slice(s, mode);
            let e = sl.embedding();
            if !cfk::squares_to_zero(sl.differential())
                || k.differential().mul(&e) != e.mul(sl.differential())
            {
                failures.push(format!("{mode:?} slice at {s} is not a subcomplex"));
            }
        }
        let graded = k.slice(s, SliceMode::Exactly).dim();
        let expected = k.slice(s, SliceMode::AtLeast).dim() - k.slice(s + 1, SliceMode::AtLeast).dim();
        if graded != expected {
            failures.push(format!("dim B{{{s}}} = {graded}, expected {expected}"));
        }
    }
    Check::from_failures("slices", "all filtration slices are subcomplexes", failures)
}

fn check_infinity_symmetry(groups: &LevelGroups) -> Check {
    let failures: Vec<String> = groups
        .classes()
        .filter(|&s| groups.rank(Group::Infinity, s) != groups.rank(Group::Infinity, -s))
        .map(|s| format!("rank Hinf({s}) != rank Hinf({})", -s))
        .collect();
    Check::from_failures("hinf-symmetry", "rank Hinf(s) = rank Hinf(-s)", failures)
}

/// `im incoming_s = ker outgoing_s` for every class.
fn check_exactness(
    groups: &LevelGroups,
    table: &MapTable,
    outgoing: MapKind,
    incoming: MapKind,
    name: &'static str,
) -> Check {
    let mut failures = Vec::new();
    for s in groups.classes() {
        let pair = table.get(outgoing, s).and_then(|o| table.get(incoming, s).map(|i| (o, i)));
        match pair {
            Err(e) => failures.push(e),
            Ok((out, inc)) => {
                if !f2la::same_column_space(inc, &f2la::kernel_matrix(out)) {
                    failures.push(format!("im {incoming} != ker {outgoing} at s={s}"));
                }
            }
        }
    }
    Check::from_failures(
        name,
        &format!("im {incoming}* = ker {outgoing}* in every class"),
        failures,
    )
}

fn check_cone_identities(groups: &LevelGroups, table: &MapTable) -> Check {
    let (hi, h1, h0) = (
        groups.total(Group::Infinity),
        groups.total(Group::One),
        groups.total(Group::Zero),
    );
    let mut failures = Vec::new();
    for (kind, target, lhs, rhs) in [
        (MapKind::Phi, "H0", h0, h1 + hi),
        (MapKind::PhiBar, "H0", h0, h1 + hi),
        (MapKind::Psi, "Hinf", hi, h0 + h1),
        (MapKind::PsiBar, "Hinf", hi, h0 + h1),
    ] {
        match table.total_rank(kind) {
            Err(e) => failures.push(format!("{kind}: {e}")),
            Ok(r) if lhs + 2 * r == rhs => {}
            Ok(r) => failures.push(format!("dim {target} = {lhs} but cone of {kind} gives {rhs} - 2*{r}")),
        }
    }
    Check::from_failures("cone-identities", "dims match the four mapping cones", failures)
}

fn check_cone_agreement(k: &FilteredKnotComplex, groups: &LevelGroups, table: &MapTable) -> Check {
    let mut failures = Vec::new();
    for kind in [MapKind::Phi, MapKind::Psi] {
        let result = levels::total_chain_map(k, groups, kind)
            .map_err(|e| e.to_string())
            .and_then(|(f, ds, dt)| {
                let cone = cones::mapping_cone(&f, &ds, &dt).map_err(|e| e.to_string())?;
                let hs = f2la::homology(&ds).map_err(|e| e.to_string())?.rank();
                let ht = f2la::homology(&dt).map_err(|e| e.to_string())?.rank();
                let r = table.total_rank(kind)?;
                let chain = cone.homology_rank();
                if chain + 2 * r == hs + ht {
                    Ok(())
                } else {
                    Err(format!("chain-level cone {chain}, homology-level {hs} + {ht} - 2*{r}"))
                }
            });
        if let Err(e) = result {
            failures.push(format!("{kind}: {e}"));
        }
    }
    Check::from_failures("cone-agreement", "chain-level cones of phi and psi agree", failures)
}

fn check_surgery(k: &FilteredKnotComplex, groups: &LevelGroups) -> Check {
    match levels::hfk_surgery(k, 1) {
        Err(e) => Check::fail("surgery-n1", e.to_string()),
        Ok(t) if t == groups.ranks(Group::One) => Check::pass("surgery-n1", "n=1 surgery table equals H1"),
        Ok(t) => Check::fail("surgery-n1", format!("{t:?} vs {:?}", groups.ranks(Group::One))),
    }
}

fn check_splice_with_unknot(k: &FilteredKnotComplex) -> Check {
    let unknot = cfk::catalog("unknot").expect("bundled unknot");
    let expected = k.homology_rank();
    let mut failures = Vec::new();
    for name in EtaStrategy::NAMED {
        let eta: EtaStrategy = name.parse().expect("named strategy");
        let result = KnotLevels::compute(k, &eta)
            .and_then(|a| KnotLevels::compute(&unknot, &eta).map(|b| (a, b)))
            .map_err(splice::SpliceError::from)
            .and_then(|(a, b)| Ok((splice::splice(&a, &b)?, splice::splice(&b, &a)?)));
        match result {
            Err(e) => failures.push(format!("{name}: {e}")),
            Ok((ab, ba)) => {
                if ab.homology_rank != expected || ba.homology_rank != expected {
                    failures.push(format!(
                        "{name}: ranks {} / {} (swapped), expected {expected}",
                        ab.homology_rank, ba.homology_rank
                    ));
                }
            }
        }
    }
    Check::from_failures(
        "splice-unknot",
        &format!("splice with unknot has rank {expected} under every strategy"),
        failures,
    )
}

fn check_alexander(k: &FilteredKnotComplex) -> Check {
    if !k.has_maslov() {
        return Check::pass("alexander", "skipped: no maslov gradings");
    }
    match levels::alexander_polynomial(k) {
        Ok(p) if p.is_symmetric() => Check::pass("alexander", p.to_string()),
        Ok(p) => Check::fail("alexander", format!("not symmetric: {p}")),
        Err(e) => Check::fail("alexander", e.to_string()),
    }
}

/// Level-one complexes at classes outside `[-g, g]` must be acyclic.
pub fn fringe_is_acyclic(k: &FilteredKnotComplex, s: i32) -> bool {
    [LevelKind::One, LevelKind::Zero].into_iter().all(|kind| {
        cones::level_complex(k, kind, s).is_ok_and(|c| c.homology_rank() == 0)
    })
}
