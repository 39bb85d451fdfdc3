//! Tableau simulation checked against the dense backend and against
//! Heisenberg-picture conjugation.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stabilab::audit::conjugate_pauli_by_circuit;
use stabilab::circuit::random_clifford;
use stabilab::dense::run_circuit_dense;
use stabilab::tableau::run_circuit_with;
use stabilab::{canonical_generators, Circuit, ForcedOutcomes, Gate, PauliString, SinglePauli, StabilizerTableau};

fn circuit(n: usize, gates: usize, seed: u64) -> Circuit {
    random_clifford(n, gates, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn tableau(c: &Circuit) -> StabilizerTableau {
    run_circuit_with(c, &mut ForcedOutcomes::new([])).unwrap().0
}

fn labels(ps: &[PauliString]) -> BTreeSet<String> {
    ps.iter().map(|p| p.to_label()).collect()
}

#[test]
fn conjugation_table_of_single_qubit_gates() {
    let cases = [
        (Gate::H(0), ["+Z", "-Y", "+X"]),
        (Gate::S(0), ["+Y", "-X", "+Z"]),
        (Gate::X(0), ["+X", "-Y", "-Z"]),
        (Gate::Y(0), ["-X", "+Y", "-Z"]),
        (Gate::Z(0), ["-X", "-Y", "+Z"]),
    ];
    for (g, images) in cases {
        let c = Circuit::from_gates(1, [g]).unwrap();
        for (axis, want) in [SinglePauli::X, SinglePauli::Y, SinglePauli::Z].into_iter().zip(images) {
            let got = conjugate_pauli_by_circuit(&PauliString::from_factors(&[axis]), &c).unwrap();
            assert_eq!(got.to_label(), want, "{g} {axis}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The evolved tableau stabilizes exactly what conjugating each `Z_q`
    /// through the circuit gives.
    #[test]
    fn schrodinger_and_heisenberg_pictures_agree(n in 1usize..10, gates in 0usize..120, seed in any::<u64>()) {
        let c = circuit(n, gates, seed);
        let heisenberg: Vec<PauliString> = (0..n)
            .map(|q| conjugate_pauli_by_circuit(&PauliString::single(n, q, SinglePauli::Z).unwrap(), &c).unwrap())
            .collect();
        let t = tableau(&c);
        t.validate().unwrap();
        prop_assert_eq!(canonical_generators(&heisenberg).unwrap(), t.canonical_form());
        for (q, h) in heisenberg.iter().enumerate() {
            prop_assert_eq!(&t.stabilizer(q), h);
        }
    }

    #[test]
    fn canonical_generators_stabilize_dense_state(n in 1usize..8, gates in 0usize..150, seed in any::<u64>()) {
        let c = circuit(n, gates, seed);
        let (dense, _) = run_circuit_dense(&c, &mut ForcedOutcomes::new([])).unwrap();
        for g in tableau(&c).canonical_form() {
            prop_assert!(dense.is_stabilized_by(&g).unwrap(), "{}", g);
        }
    }

    #[test]
    fn expectations_agree_with_dense(
        n in 1usize..6,
        gates in 0usize..80,
        seed in any::<u64>(),
        obs in proptest::collection::vec(0usize..4, 6),
    ) {
        let c = circuit(n, gates, seed);
        let (dense, _) = run_circuit_dense(&c, &mut ForcedOutcomes::new([])).unwrap();
        let factors: Vec<SinglePauli> = obs[..n].iter().map(|&i| SinglePauli::ALL[i]).collect();
        let p = PauliString::from_factors(&factors);
        let e = tableau(&c).expectation_pauli(&p).unwrap() as f64;
        prop_assert!((dense.expectation_pauli(&p).unwrap() - e).abs() < 1e-10);
    }

    #[test]
    fn canonical_form_is_gauge_invariant(n in 1usize..8, gates in 0usize..100, seed in any::<u64>(), pad in 0usize..40) {
        // Appending a circuit and its inverse must not change the canonical form.
        let c = circuit(n, gates, seed);
        let extra = circuit(n, pad, seed ^ 1);
        let mut gates_all = c.unitary_gates().unwrap();
        gates_all.extend(extra.unitary_gates().unwrap());
        gates_all.extend(extra.inverse().unwrap().unitary_gates().unwrap());
        let longer = Circuit::from_gates(n, gates_all).unwrap();
        prop_assert_eq!(tableau(&c).canonical_form(), tableau(&longer).canonical_form());
    }

    #[test]
    fn measurement_collapses_consistently(n in 1usize..7, gates in 0usize..80, seed in any::<u64>(), q in 0usize..7, forced in any::<bool>()) {
        let q = q % n;
        let mut c = circuit(n, gates, seed);
        let mut measured = Circuit::new(n, 1).unwrap();
        for g in c.unitary_gates().unwrap() {
            measured.gate(g).unwrap();
        }
        measured.measure(q, 0).unwrap();
        c = measured;
        let t_run = run_circuit_with(&c, &mut ForcedOutcomes::new([forced]));
        let d_run = run_circuit_dense(&c, &mut ForcedOutcomes::new([forced]));
        prop_assert_eq!(t_run.is_ok(), d_run.is_ok());
        if let (Ok((t, tb)), Ok((d, db))) = (t_run, d_run) {
            prop_assert_eq!(tb, db);
            t.validate().unwrap();
            for g in t.canonical_form() {
                prop_assert!(d.is_stabilized_by(&g).unwrap());
            }
        }
    }
}

#[test]
fn ghz_corpus_state() {
    let c = stabilab::corpus::get("ghz3").unwrap().unwrap();
    let t = tableau(&c);
    let want: BTreeSet<String> = ["+XXX", "+ZIZ", "+IZZ"].iter().map(|s| s.to_string()).collect();
    assert_eq!(labels(&t.canonical_form()), want);
    assert_eq!(
        t.expectation_pauli(&PauliString::from_label("ZIZ").unwrap()).unwrap(),
        1
    );
    assert_eq!(
        t.expectation_pauli(&PauliString::from_label("ZII").unwrap()).unwrap(),
        0
    );
}
