//! Deterministic fixtures shared by the benchmark targets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabilab::circuit::random_clifford;
use stabilab::{Circuit, PauliString, SinglePauli};

/// Random H/S/CNOT circuit, fixed for a given `(n, gates, seed)`.
pub fn clifford_circuit(n: usize, gates: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_clifford(n, gates, &mut rng).expect("n >= 1")
}

/// Pauli string with factor `(q * 7 + salt) mod 4` on qubit `q`.
pub fn pattern_pauli(n: usize, salt: usize) -> PauliString {
    let factors: Vec<SinglePauli> = (0..n).map(|q| SinglePauli::ALL[(q * 7 + salt) % 4]).collect();
    PauliString::from_factors(&factors)
}
