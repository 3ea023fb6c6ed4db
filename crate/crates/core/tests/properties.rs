use hfsplice_core::checks::run_battery;
use hfsplice_core::f2la::{self, naive, BitVec, F2Matrix};
use hfsplice_core::random::random_complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bytes(m: &F2Matrix) -> Vec<Vec<u8>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> F2Matrix {
    F2Matrix::from_entries(
        rows,
        cols,
        (0..rows * cols).filter(|&i| bits[i]).map(|i| (i / cols, i % cols)),
    )
    .unwrap()
}

/// A random invertible matrix: unit lower times unit upper triangular, then a row permutation.
fn invertible(n: usize, lower: &[bool], upper: &[bool], perm: &[usize]) -> F2Matrix {
    let mut l = F2Matrix::identity(n);
    let mut u = F2Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, lower[i * n + j]);
            u.set(j, i, upper[i * n + j]);
        }
    }
    let mut p = F2Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, true);
    }
    p.mul(&l).mul(&u)
}

fn inverse(m: &F2Matrix) -> F2Matrix {
    let n = m.nrows();
    let cols: Vec<BitVec> = (0..n).map(|j| m.solve(&BitVec::unit(n, j)).unwrap()).collect();
    F2Matrix::from_columns(n, &cols)
}

/// `P E P^{-1}` where `E` sends `e_{2i}` to `e_{2i+1}` for the first `pairs` pairs.
fn complex_strategy(max_dim: usize) -> impl Strategy<Value = (F2Matrix, F2Matrix)> {
    (1..=max_dim)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..=n / 2,
                prop::collection::vec(any::<bool>(), n * n),
                prop::collection::vec(any::<bool>(), n * n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, pairs, lower, upper, perm)| {
            let mut e = F2Matrix::zeros(n, n);
            for i in 0..pairs {
                e.set(2 * i + 1, 2 * i, true);
            }
            let p = invertible(n, &lower, &upper, &perm);
            (p.mul(&e).mul(&inverse(&p)), p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_dimension_matches_oracle((d, _) in complex_strategy(64)) {
        let h = f2la::homology(&d).unwrap();
        let n = d.nrows();
        prop_assert_eq!(h.rank(), naive::homology_dim(&bytes(&d)));
        prop_assert_eq!(h.rank(), n - 2 * d.rank());
        for z in h.cycle_reps() {
            prop_assert!(d.apply(z).is_zero());
        }
        // representatives stay independent modulo boundaries
        let mut stacked = h.boundary_basis().to_vec();
        stacked.extend(h.cycle_reps().iter().cloned());
        prop_assert_eq!(F2Matrix::from_columns(n, &stacked).rank(), stacked.len());
    }

    #[test]
    fn rank_matches_oracle(rows in 0usize..20, cols in 0usize..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits: Vec<bool> = (0..rows * cols).map(|_| rand::Rng::random_bool(&mut rng, 0.3)).collect();
        let m = matrix(rows, cols, &bits);
        prop_assert_eq!(m.rank(), naive::rank(&bytes(&m)));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_finds_solutions_exactly_for_consistent_systems(
        rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits: Vec<bool> = (0..rows * cols).map(|_| rand::Rng::random_bool(&mut rng, 0.4)).collect();
        let m = matrix(rows, cols, &bits);
        let x0 = BitVec::from_bits(&(0..cols).map(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect::<Vec<_>>());
        let b = m.apply(&x0);
        let x = m.solve(&b).unwrap();
        prop_assert_eq!(m.apply(&x), b);
        let target = BitVec::from_bits(&(0..rows).map(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect::<Vec<_>>());
        match m.solve(&target) {
            Some(x) => prop_assert_eq!(m.apply(&x), target),
            None => {
                let mut cols_plus = m.columns();
                cols_plus.push(target);
                prop_assert!(F2Matrix::from_columns(rows, &cols_plus).rank() > m.rank());
            }
        }
    }

    #[test]
    fn identity_induces_identity((d, _) in complex_strategy(24)) {
        let h = f2la::homology(&d).unwrap();
        let id = f2la::induced_map(&F2Matrix::identity(d.nrows()), &h, &h).unwrap();
        prop_assert_eq!(id, F2Matrix::identity(h.rank()));
    }

    /// Chain isomorphisms `P: (V, d) → (V, P d P⁻¹)` perturbed by null-homotopic terms.
    #[test]
    fn induced_maps_compose(
        (d, p) in complex_strategy(16),
        seed in any::<u64>(),
    ) {
        let n = d.nrows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = |density: f64| {
            let bits: Vec<bool> = (0..n * n).map(|_| rand::Rng::random_bool(&mut rng, density)).collect();
            matrix(n, n, &bits)
        };
        let q = {
            let l = random(0.3);
            // I + strictly lower part is invertible
            let mut m = F2Matrix::identity(n);
            for (i, j) in l.entries() { if j < i { m.set(i, j, true); } }
            m
        };
        let d1 = p.mul(&d).mul(&inverse(&p));
        let d2 = q.mul(&d1).mul(&inverse(&q));
        let (h1, h2) = (random(0.2), random(0.2));
        let f = p.add(&d1.mul(&h1)).add(&h1.mul(&d));
        let g = q.add(&d2.mul(&h2)).add(&h2.mul(&d1));
        let (c0, c1, c2) = (
            f2la::homology(&d).unwrap(),
            f2la::homology(&d1).unwrap(),
            f2la::homology(&d2).unwrap(),
        );
        let f_star = f2la::induced_map(&f, &c0, &c1).unwrap();
        let g_star = f2la::induced_map(&g, &c1, &c2).unwrap();
        let gf_star = f2la::induced_map(&g.mul(&f), &c0, &c2).unwrap();
        prop_assert_eq!(gf_star, g_star.mul(&f_star));
    }

    #[test]
    fn random_complexes_satisfy_battery(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_complex(&mut rng, "prop", 24).unwrap();
        let report = run_battery(&k);
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
