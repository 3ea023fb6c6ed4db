//! One function per subcommand. Each returns a [`Report`]; errors that make
//! the command meaningless (bad input, failed chain-level checks) are [`Error`]s.

use hfsplice_core::cfk::{CfkError, ValidateOptions};
use hfsplice_core::checks::{run_battery, BatteryReport};
use hfsplice_core::levels::{self, Group, LevelGroups, LevelMaps, MapKind};
use hfsplice_core::random::random_complex;
use hfsplice_core::splice::{self, KnotLevels};
use hfsplice_core::{EtaStrategy, FilteredKnotComplex};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{self, MatrixFile, WitnessFile};
use crate::input::{self, Input};
use crate::report::{Report, Table};
use crate::Error;

const GROUPS: [Group; 3] = [Group::Infinity, Group::One, Group::Zero];

fn strict() -> ValidateOptions {
    ValidateOptions::default()
}

fn load(report: &mut Report, source: &str, opts: ValidateOptions) -> Result<FilteredKnotComplex, Error> {
    let input = input::read(source)?;
    report.inputs.push(input.digest.clone());
    input::complex(&input, opts)
}

fn read_recorded(report: &mut Report, source: &str) -> Result<Input, Error> {
    let input = input::read(source)?;
    report.inputs.push(input.digest.clone());
    Ok(input)
}

fn witness_value(k: &FilteredKnotComplex) -> Value {
    json!(WitnessFile::of(k).symmetry)
}

fn level_groups(k: &FilteredKnotComplex) -> Result<LevelGroups, Error> {
    levels::level_groups(k).map_err(|error| Error::Levels { subject: k.name().into(), error })
}

/// Parses and validates one file. Returns the report and, when valid, the complex.
pub fn validate(
    command: &[String],
    source: &str,
    infer_symmetry: bool,
) -> Result<(Report, Option<FilteredKnotComplex>), Error> {
    let mut report = Report::new(command);
    let input = read_recorded(&mut report, source)?;
    let raw = format::parse_complex(&input.text).map_err(|error| Error::Format {
        path: source.into(),
        error,
    })?;
    let name = raw.name.clone();
    let given = raw.symmetry.is_some();
    report.value("name", name.as_str());
    match raw.validate(ValidateOptions { infer_symmetry, ..strict() }) {
        Ok(k) => {
            report.value("generators", k.dim());
            report.value("arrows", k.arrows().len());
            report.value("genus_bound", k.genus_bound());
            report.value("homology_rank", k.homology_rank());
            report.value("symmetry", if given { "given" } else { "inferred" });
            report.value("witness", witness_value(&k));
            report.check(&name, "cfk", true, "");
            Ok((report, Some(k)))
        }
        Err(e) => {
            let hint = match e {
                CfkError::MissingSymmetry if !infer_symmetry => " [try --infer-symmetry]",
                _ => "",
            };
            report.check(&name, "cfk", false, format!("{e}{hint}"));
            Ok((report, None))
        }
    }
}

fn group_row(groups: &LevelGroups, s: i32) -> Vec<Value> {
    let mut row = vec![json!(s), json!(-s)];
    row.extend(GROUPS.iter().map(|&g| json!(groups.rank(g, s))));
    row
}

/// Ranks of `H_∞`, `H_1`, `H_0` per class, for all classes in the support or for one.
pub fn groups(command: &[String], source: &str, class: Option<i32>) -> Result<Report, Error> {
    let mut report = Report::new(command);
    let k = load(&mut report, source, strict())?;
    let groups = level_groups(&k)?;
    report.value("name", k.name());
    for g in GROUPS {
        report.value(&format!("total_{}", g.label()), groups.total(g));
    }
    let classes: Vec<i32> = match class {
        Some(s) => vec![s],
        None => {
            let support: Vec<i32> = GROUPS
                .iter()
                .flat_map(|&g| groups.support(g))
                .map(|(s, _)| s)
                .collect();
            match (support.iter().min(), support.iter().max()) {
                (Some(&lo), Some(&hi)) => (lo..=hi).collect(),
                _ => Vec::new(),
            }
        }
    };
    report.tables.push(Table {
        title: "ranks by class (s internal, alex = -s)".into(),
        columns: ["s", "alex", "Hinf", "H1", "H0"].map(String::from).to_vec(),
        rows: classes.iter().map(|&s| group_row(&groups, s)).collect(),
    });
    let labels: serde_json::Map<String, Value> = GROUPS
        .iter()
        .map(|&g| (g.label().to_string(), json!(groups.class_labels(g))))
        .collect();
    report.value("class_labels", Value::Object(labels));
    Ok(report)
}

/// Ranks of the `n`-surgery groups per class.
pub fn surgery(command: &[String], source: &str, n: i32) -> Result<Report, Error> {
    if n <= 0 {
        return Err(Error::Usage(format!(
            "surgery needs n >= 1, got {n}; the n = 0 complexes are the H0 groups, see `hfsplice groups`"
        )));
    }
    let mut report = Report::new(command);
    let k = load(&mut report, source, strict())?;
    let table = levels::hfk_surgery(&k, n).map_err(|error| Error::Levels {
        subject: k.name().into(),
        error,
    })?;
    let first = table.iter().position(|&(_, r)| r > 0);
    let last = table.iter().rposition(|&(_, r)| r > 0);
    let support = match (first, last) {
        (Some(a), Some(b)) => &table[a..=b],
        _ => &[][..],
    };
    report.value("name", k.name());
    report.value("n", n);
    report.value("total", table.iter().map(|&(_, r)| r).sum::<usize>());
    report.tables.push(Table {
        title: format!("{n}-surgery ranks by class (s internal, alex = -s)"),
        columns: ["s", "alex", "rank"].map(String::from).to_vec(),
        rows: support.iter().map(|&(s, r)| vec![json!(s), json!(-s), json!(r)]).collect(),
    });
    Ok(report)
}

/// How `η̄` is chosen for the two sides of a splice.
pub struct EtaChoice<'a> {
    pub strategy: &'a str,
    pub files: [Option<&'a str>; 2],
}

pub struct SpliceArgs<'a> {
    pub files: [&'a str; 2],
    pub eta: EtaChoice<'a>,
    pub witnesses: [Option<&'a str>; 2],
    pub matrices: bool,
}

fn eta_strategy(
    report: &mut Report,
    choice: &EtaChoice<'_>,
    side: usize,
    groups: &LevelGroups,
) -> Result<EtaStrategy, Error> {
    let file = choice.files[side];
    if choice.strategy != "explicit" {
        if file.is_some() {
            return Err(Error::Usage("eta files are only used with --eta explicit".into()));
        }
        return choice.strategy.parse().map_err(Error::Usage);
    }
    let Some(file) = file else {
        return Err(Error::Usage("--eta explicit needs --eta-file1 and --eta-file2".into()));
    };
    let input = read_recorded(report, file)?;
    let m = MatrixFile::parse(&input.text)
        .and_then(|m| {
            m.to_matrix(
                &groups.class_labels(Group::Infinity),
                &groups.class_labels(Group::Zero),
            )
        })
        .map_err(|error| Error::Format { path: file.into(), error })?;
    Ok(EtaStrategy::Explicit(m))
}

fn map_matrices(prefix: &str, groups: &LevelGroups, maps: &LevelMaps) -> Vec<MatrixFile> {
    let labels = |g: Group| groups.class_labels(g);
    let kinds = [MapKind::Phi, MapKind::PhiBar, MapKind::Psi, MapKind::PsiBar];
    let mut out: Vec<MatrixFile> = kinds
        .iter()
        .map(|&kind| {
            let (from, to) = match kind {
                MapKind::Phi | MapKind::PhiBar => (Group::One, Group::Infinity),
                MapKind::Psi | MapKind::PsiBar => (Group::Zero, Group::One),
            };
            MatrixFile::new(format!("{prefix}/{kind}"), labels(to), labels(from), maps.get(kind))
        })
        .collect();
    out.push(MatrixFile::new(
        format!("{prefix}/eta"),
        labels(Group::Infinity),
        labels(Group::Zero),
        &maps.eta,
    ));
    out
}

/// Rank of the splice cube, with vertex dimensions and edge ranks.
pub fn splice(command: &[String], args: &SpliceArgs<'_>) -> Result<Report, Error> {
    let mut report = Report::new(command);
    let mut sides = Vec::with_capacity(2);
    for side in 0..2 {
        let mut k = load(&mut report, args.files[side], strict())?;
        if let Some(w) = args.witnesses[side] {
            let input = read_recorded(&mut report, w)?;
            k = input::with_witness(k, &input)?;
        }
        let groups = level_groups(&k)?;
        let eta = eta_strategy(&mut report, &args.eta, side, &groups)?;
        sides.push((k, groups, eta));
    }
    let levels: Vec<KnotLevels> = sides
        .into_par_iter()
        .map(|(k, groups, eta)| {
            let maps = levels::level_maps(&k, &groups, &eta).map_err(|error| Error::Levels {
                subject: k.name().into(),
                error,
            })?;
            Ok((k, KnotLevels { name: String::new(), groups, maps }))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .enumerate()
        .map(|(side, (k, mut l))| {
            l.name = k.name().into();
            report.value(&format!("witness{}", side + 1), witness_value(&k));
            l
        })
        .collect();
    let summary = splice::splice(&levels[0], &levels[1])?;

    report.value("first", summary.first.as_str());
    report.value("second", summary.second.as_str());
    report.value("eta1", summary.strategies.0);
    report.value("eta2", summary.strategies.1);
    report.value("dimension", summary.dimension);
    report.value("differential_rank", summary.differential_rank);
    report.value("homology_rank", summary.homology_rank);
    report.tables.push(Table {
        title: "vertex dimensions".into(),
        columns: vec!["vertex".into(), "dim".into()],
        rows: summary.vertex_dims.iter().map(|(v, d)| vec![json!(v), json!(d)]).collect(),
    });
    report.tables.push(Table {
        title: "edge ranks".into(),
        columns: vec!["edge".into(), "rank".into()],
        rows: summary.edge_ranks.iter().map(|(e, r)| vec![json!(e), json!(r)]).collect(),
    });
    if args.matrices {
        for (prefix, l) in ["first", "second"].iter().zip(&levels) {
            report.matrices.extend(map_matrices(prefix, &l.groups, &l.maps));
        }
    }
    Ok(report)
}

pub struct SelftestArgs<'a> {
    pub files: &'a [String],
    pub random: Option<usize>,
    pub seed: u64,
    pub max_generators: usize,
    pub infer_symmetry: bool,
}

/// Runs the check battery on files, on seeded random complexes, or on the
/// bundled catalog when neither is given. Files are loaded with a lenient
/// symmetry so that a bad witness is diagnosed by the battery.
pub fn selftest(command: &[String], args: &SelftestArgs<'_>) -> Result<Report, Error> {
    let mut report = Report::new(command);
    let mut corpus = Vec::new();
    let opts = ValidateOptions {
        infer_symmetry: args.infer_symmetry,
        lenient_symmetry: true,
    };
    let mut sources: Vec<String> = args.files.to_vec();
    if sources.is_empty() && args.random.is_none() {
        sources = input::BUNDLED
            .iter()
            .map(|(n, _)| format!("{}{n}", input::BUILTIN_PREFIX))
            .collect();
    }
    for source in &sources {
        corpus.push(load(&mut report, source, opts)?);
    }
    if let Some(count) = args.random {
        report.value("seed", args.seed);
        report.value("random", count);
        report.value("max_generators", args.max_generators);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for i in 0..count {
            let name = format!("random-{}-{i}", args.seed);
            let k = random_complex(&mut rng, &name, args.max_generators)
                .map_err(|error| Error::Complex { path: name, error })?;
            corpus.push(k);
        }
    }
    let batteries: Vec<BatteryReport> = corpus.par_iter().map(run_battery).collect();

    let mut rows = Vec::new();
    for (k, b) in corpus.iter().zip(&batteries) {
        let failed = b.failures().count();
        rows.push(vec![
            json!(k.name()),
            json!(k.dim()),
            json!(k.homology_rank()),
            json!(b.checks.len() - failed),
            json!(failed),
        ]);
        for c in &b.checks {
            report.check(&b.complex, c.name, c.passed, c.detail.clone());
        }
    }
    report.value("complexes", corpus.len());
    report.tables.push(Table {
        title: "battery".into(),
        columns: ["complex", "dim", "rank H", "passed", "failed"].map(String::from).to_vec(),
        rows,
    });
    Ok(report)
}
