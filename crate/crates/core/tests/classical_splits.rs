use entspan_core::classicality::{
    classify, dense_commutator_norm, find_classical_split, pauli_norm, predict_zero_concurrence,
    symbolic_commutator, verify_classical_split, DEFAULT_COMMUTATOR_TOL,
};
use entspan_core::entanglement::concurrence;
use entspan_core::exact::{reduced_ground_state, to_dense, DEFAULT_DEGENERACY_TOL};
use entspan_core::model::{field, ChainModel, PauliLabel, PauliLabel::*, PauliString, ProbePair, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random_term(n: usize, rng: &mut impl Rng) -> Term {
    loop {
        let k = rng.random_range(1..=3.min(n));
        let mut sites: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.random_range(i..n);
            sites.swap(i, j);
        }
        let f: Vec<_> = sites[..k].iter().map(|&s| (s, PauliLabel::from_index(rng.random_range(1..4)))).collect();
        if let Ok(t) = Term::new(PauliString::new(f).unwrap(), rng.random_range(-1.0..1.0)) {
            return t;
        }
    }
}

#[test]
fn symbolic_commutator_matches_dense() {
    let mut rng = ChaCha20Rng::seed_from_u64(101);
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let a: Vec<Term> = (0..rng.random_range(1..4)).map(|_| random_term(n, &mut rng)).collect();
        let b: Vec<Term> = (0..rng.random_range(1..4)).map(|_| random_term(n, &mut rng)).collect();
        let sym = pauli_norm(&symbolic_commutator(&a, &b));
        let dense = dense_commutator_norm(&a, &b, n).unwrap();
        assert!((sym - dense).abs() < 1e-12 * (1.0 + dense), "{sym} vs {dense}");
    }
}

#[test]
fn found_partitions_always_verify() {
    let mut rng = ChaCha20Rng::seed_from_u64(103);
    let probes = ProbePair::new(0, 4, 5).unwrap();
    let mut found = 0;
    for _ in 0..300 {
        let terms: Vec<Term> = (0..rng.random_range(0..7)).map(|_| random_term(5, &mut rng)).collect();
        if let Some(p) = find_classical_split(&terms, probes, 20).unwrap() {
            found += 1;
            assert!(verify_classical_split(&terms, &p, probes, DEFAULT_COMMUTATOR_TOL).unwrap());
        }
    }
    assert!(found > 20, "too few positive cases ({found}) to exercise the check");
}

#[test]
fn search_agrees_with_brute_force_enumeration() {
    let mut rng = ChaCha20Rng::seed_from_u64(107);
    let probes = ProbePair::new(0, 3, 4).unwrap();
    for _ in 0..300 {
        let terms: Vec<Term> = (0..rng.random_range(1..8)).map(|_| random_term(4, &mut rng)).collect();
        let k = terms.len();
        let mut exists = false;
        for mask in 0u32..(1 << k) {
            let a: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).collect();
            let p = entspan_core::classicality::TermPartition::new(a, b);
            if verify_classical_split(&terms, &p, probes, DEFAULT_COMMUTATOR_TOL).unwrap() {
                exists = true;
                break;
            }
        }
        assert_eq!(find_classical_split(&terms, probes, 20).unwrap().is_some(), exists, "{terms:?}");
    }
}

fn classical_chain(last_zz: bool) -> ChainModel {
    let last = if last_zz { Term::pair(2, Z, 3, Z, 0.9) } else { Term::pair(2, X, 3, X, 0.9) };
    ChainModel::new(4, [Term::pair(0, Z, 1, Z, 0.7).unwrap(), Term::pair(1, X, 2, X, 1.1).unwrap(), last.unwrap()])
        .unwrap()
}

fn appendix_chain() -> ChainModel {
    ChainModel::new(3, [Term::pair(0, X, 1, X, 1.0).unwrap(), Term::pair(1, X, 2, X, 1.0).unwrap()]).unwrap()
}

fn with_random_probe_fields(m: &ChainModel, probes: ProbePair, rng: &mut impl Rng) -> ChainModel {
    let mut extra = Vec::new();
    for s in [probes.a, probes.b] {
        let h = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        extra.extend(field(s, &h).unwrap());
    }
    m.with_terms(extra).unwrap()
}

fn probe_concurrence(m: &ChainModel, probes: ProbePair) -> f64 {
    let rho = reduced_ground_state(&to_dense(m).unwrap(), &[probes.a, probes.b], DEFAULT_DEGENERACY_TOL).unwrap();
    concurrence(&rho).unwrap()
}

#[test]
fn classical_models_never_entangle_the_probes() {
    let mut rng = ChaCha20Rng::seed_from_u64(109);
    for m in [classical_chain(false), appendix_chain()] {
        let probes = ProbePair::ends(m.n_sites()).unwrap();
        assert!(predict_zero_concurrence(&m, probes).unwrap());
        for _ in 0..100 {
            let c = probe_concurrence(&with_random_probe_fields(&m, probes, &mut rng), probes);
            assert!(c < 1e-10, "C = {c}");
        }
    }
}

#[test]
fn non_classical_variant_can_entangle() {
    let m = classical_chain(true);
    let probes = ProbePair::ends(4).unwrap();
    let (_, verdict) = classify(&m, probes).unwrap();
    assert!(!verdict.is_classical());
    let mut rng = ChaCha20Rng::seed_from_u64(113);
    let best = (0..100)
        .map(|_| probe_concurrence(&with_random_probe_fields(&m, probes, &mut rng), probes))
        .fold(0.0, f64::max);
    assert!(best > 0.01, "max C = {best}");
}

#[test]
fn probe_fields_do_not_affect_the_verdict() {
    let probes = ProbePair::ends(4).unwrap();
    let m = classical_chain(false).with_terms([Term::single(0, Y, 3.0).unwrap(), Term::single(3, X, -1.0).unwrap()]);
    assert!(predict_zero_concurrence(&m.unwrap(), probes).unwrap());
    let with_mediator_field = classical_chain(false).with_terms([Term::single(2, Z, 0.4).unwrap()]).unwrap();
    assert!(!predict_zero_concurrence(&with_mediator_field, probes).unwrap());
}
