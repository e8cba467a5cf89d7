use entspan_core::exact::{
    eigh, energy_gap, expectation, gibbs, ground_state_dm, partial_trace_keep, reduced_ground_state, to_dense,
    trace_distance, DEFAULT_DEGENERACY_TOL,
};
use entspan_core::model::{ChainModel, PauliLabel, PauliString, Term};
use entspan_core::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random_model(n: usize, n_terms: usize, rng: &mut impl Rng) -> ChainModel {
    let mut terms = Vec::new();
    while terms.len() < n_terms {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let la = PauliLabel::from_index(rng.random_range(1..4));
        let lb = PauliLabel::from_index(rng.random_range(1..4));
        let f = if a == b { PauliString::single(a, la) } else { PauliString::pair(a, la, b, lb).unwrap() };
        terms.push(Term::new(f, rng.random_range(-1.0..1.0)).unwrap());
    }
    ChainModel::new(n, terms).unwrap()
}

#[test]
fn spectral_reconstruction_and_orthonormality() {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    for n in [2, 3, 5, 7] {
        let m = random_model(n, 3 * n, &mut rng);
        let op = to_dense(&m).unwrap();
        let spec = eigh(&op).unwrap();
        let dim = op.dim();
        let norm = spec.eigenvalues.iter().fold(0.0f64, |a, e| a.max(e.abs()));
        let vecs: Vec<Vec<C64>> = (0..dim).map(|k| spec.vector(k)).collect();
        for i in 0..dim {
            for j in 0..dim {
                let rec: C64 = (0..dim).map(|k| vecs[k][i] * vecs[k][j].conj() * spec.eigenvalues[k]).sum();
                assert!((rec - op.get(i, j)).norm() <= 1e-10 * norm, "n={n} ({i},{j})");
                let ip: C64 = (0..dim).map(|k| vecs[i][k].conj() * vecs[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(want, 0.0)).norm() < 1e-10);
            }
        }
        assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn gibbs_converges_to_ground_state() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let m = random_model(4, 10, &mut rng);
    let op = to_dense(&m).unwrap();
    let gap = energy_gap(&op, DEFAULT_DEGENERACY_TOL).unwrap();
    assert!(gap.value > 1e-3, "fixture must be gapped");
    let gs = ground_state_dm(&op, DEFAULT_DEGENERACY_TOL).unwrap();
    let mut last = f64::INFINITY;
    for beta in [1.0, 5.0, 20.0, 80.0] {
        let d = trace_distance(&gibbs(&op, beta).unwrap(), &gs).unwrap();
        assert!(d < last);
        last = d;
    }
    assert!(last < 1e-8);
}

#[test]
fn thermal_energy_decreases_with_beta() {
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let m = random_model(3, 8, &mut rng);
    let op = to_dense(&m).unwrap();
    let energies: Vec<f64> =
        [0.0, 0.5, 1.0, 2.0, 4.0].iter().map(|&b| expectation(&gibbs(&op, b).unwrap(), &op).unwrap()).collect();
    assert!(energies.windows(2).all(|w| w[1] < w[0]), "{energies:?}");
    // β = 0: tr(H)/dim = 0 for traceless Pauli sums
    assert!(energies[0].abs() < 1e-12);
}

#[test]
fn reduced_ground_state_matches_full_partial_trace() {
    let mut rng = ChaCha20Rng::seed_from_u64(21);
    for n in [3, 4, 6] {
        let m = random_model(n, 2 * n, &mut rng);
        let op = to_dense(&m).unwrap();
        let full = ground_state_dm(&op, DEFAULT_DEGENERACY_TOL).unwrap();
        for keep in [vec![0, n - 1], vec![n - 1, 0], vec![1]] {
            let a = partial_trace_keep(&full, &keep).unwrap();
            let b = reduced_ground_state(&op, &keep, DEFAULT_DEGENERACY_TOL).unwrap();
            assert!(trace_distance(&a, &b).unwrap() < 1e-12);
        }
    }
}

#[test]
fn nested_partial_traces_commute() {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let m = random_model(4, 8, &mut rng);
    let full = gibbs(&to_dense(&m).unwrap(), 0.7).unwrap();
    let direct = partial_trace_keep(&full, &[0, 3]).unwrap();
    let staged = partial_trace_keep(&partial_trace_keep(&full, &[0, 2, 3]).unwrap(), &[0, 2]).unwrap();
    assert!(trace_distance(&direct, &staged).unwrap() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn assembled_operators_are_hermitian(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let m = random_model(n, 6, &mut rng);
        let op = to_dense(&m).unwrap();
        for i in 0..op.dim() {
            for j in 0..op.dim() {
                prop_assert!((op.get(i, j) - op.get(j, i).conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn canonical_form_is_order_independent(seed in any::<u64>()) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let m = random_model(4, 7, &mut rng);
        let mut rev: Vec<Term> = m.terms().to_vec();
        rev.reverse();
        let again = ChainModel::new(4, rev).unwrap();
        prop_assert_eq!(m.terms().len(), again.terms().len());
        for (a, b) in m.terms().iter().zip(again.terms()) {
            prop_assert_eq!(&a.factors, &b.factors);
            prop_assert!((a.coeff - b.coeff).abs() < 1e-15);
        }
    }
}
