use alloc::vec::Vec;

use super::{BitVec, F2Error, F2Matrix};

/// Incremental echelon basis. Every stored vector carries a tag recording
/// which combination of caller-supplied labels it represents.
#[derive(Clone, Debug)]
struct SpanReducer {
    basis: Vec<(usize, BitVec, BitVec)>,
    tag_len: usize,
}

impl SpanReducer {
    fn new(tag_len: usize) -> Self {
        SpanReducer {
            basis: Vec::new(),
            tag_len,
        }
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        for (pivot, b, t) in &self.basis {
            if v.get(*pivot) {
                v.xor_assign(b);
                tag.xor_assign(t);
            }
        }
        (v, tag)
    }

    /// Inserts `v` with tag `tag`; returns false when `v` is already in the span.
    fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        let (rem, acc) = self.reduce(v);
        match rem.first_one() {
            None => false,
            Some(pivot) => {
                let mut t = tag;
                t.xor_assign(&acc);
                self.basis.push((pivot, rem, t));
                true
            }
        }
    }
}

/// A basis for the homology of a GF(2) complex `(V, d)`, given by explicit cycles.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    differential: F2Matrix,
    cycle_reps: Vec<BitVec>,
    boundary_basis: Vec<BitVec>,
    reducer: SpanReducer,
}

impl HomologyPresentation {
    pub fn ambient_dim(&self) -> usize {
        self.differential.nrows()
    }

    /// Number of homology classes.
    pub fn rank(&self) -> usize {
        self.cycle_reps.len()
    }

    pub fn cycle_reps(&self) -> &[BitVec] {
        &self.cycle_reps
    }

    pub fn boundary_basis(&self) -> &[BitVec] {
        &self.boundary_basis
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    /// Coordinates of the class of `cycle` in the basis given by `cycle_reps`.
    pub fn coordinates(&self, cycle: &BitVec) -> Result<BitVec, F2Error> {
        if cycle.len() != self.ambient_dim() {
            return Err(F2Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: cycle.len(),
            });
        }
        let (rem, tag) = self.reducer.reduce(cycle);
        if rem.is_zero() {
            Ok(tag)
        } else {
            Err(F2Error::NotACycle)
        }
    }

    /// Matrix whose columns are the cycle representatives.
    pub fn representative_matrix(&self) -> F2Matrix {
        F2Matrix::from_columns(self.ambient_dim(), &self.cycle_reps)
    }
}

/// Homology of the complex with square differential `d`.
///
/// Boundaries are the independent columns of `d` in order; classes are the
/// kernel vectors (free-column order) that are independent modulo the span so far.
pub fn homology(d: &F2Matrix) -> Result<HomologyPresentation, F2Error> {
    let (rows, cols) = d.shape();
    if rows != cols {
        return Err(F2Error::NotSquare { rows, cols });
    }
    let square = d.mul(d);
    if let Some((r, c)) = square.entries().next() {
        return Err(F2Error::DifferentialSquaresNonzero { row: r, col: c });
    }

    let mut scratch = SpanReducer::new(0);
    let mut boundary_basis = Vec::new();
    for col in d.columns() {
        if scratch.insert(&col, BitVec::zeros(0)) {
            boundary_basis.push(col);
        }
    }
    let mut cycle_reps = Vec::new();
    for z in d.kernel() {
        if scratch.insert(&z, BitVec::zeros(0)) {
            cycle_reps.push(z);
        }
    }

    let classes = cycle_reps.len();
    let mut reducer = SpanReducer::new(classes);
    for b in &boundary_basis {
        reducer.insert(b, BitVec::zeros(classes));
    }
    for (i, z) in cycle_reps.iter().enumerate() {
        reducer.insert(z, BitVec::unit(classes, i));
    }

    Ok(HomologyPresentation {
        differential: d.clone(),
        cycle_reps,
        boundary_basis,
        reducer,
    })
}

/// Checks `f * d_dom == d_cod * f`.
pub fn check_chain_map(f: &F2Matrix, d_dom: &F2Matrix, d_cod: &F2Matrix) -> Result<(), F2Error> {
    if f.ncols() != d_dom.nrows() || f.nrows() != d_cod.nrows() {
        return Err(F2Error::ShapeMismatch {
            map: f.shape(),
            domain: d_dom.nrows(),
            codomain: d_cod.nrows(),
        });
    }
    let lhs = f.mul(d_dom);
    let rhs = d_cod.mul(f);
    let diff = lhs.add(&rhs);
    let first = diff.entries().next();
    match first {
        None => Ok(()),
        Some((row, col)) => Err(F2Error::NotAChainMap { row, col }),
    }
}

/// Matrix of the map on homology induced by the chain map `f`.
pub fn induced_map(
    f: &F2Matrix,
    dom: &HomologyPresentation,
    cod: &HomologyPresentation,
) -> Result<F2Matrix, F2Error> {
    check_chain_map(f, dom.differential(), cod.differential())?;
    let columns = dom
        .cycle_reps()
        .iter()
        .map(|z| cod.coordinates(&f.apply(z)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(F2Matrix::from_columns(cod.rank(), &columns))
}

/// Whether the column spans of `a` and `b` coincide.
pub fn same_column_space(a: &F2Matrix, b: &F2Matrix) -> bool {
    assert_eq!(a.nrows(), b.nrows());
    let ra = a.rank();
    ra == b.rank() && ra == concat_columns(a, b).rank()
}

/// A matrix whose columns form a basis of `ker m`.
pub fn kernel_matrix(m: &F2Matrix) -> F2Matrix {
    F2Matrix::from_columns(m.ncols(), &m.kernel())
}

fn concat_columns(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
    let mut cols = a.columns();
    cols.extend(b.columns());
    F2Matrix::from_columns(a.nrows(), &cols)
}
