//! Stabilizer tableau simulation of the Gottesman-Knill gate set.
//!
//! The state is stored as 2n Hermitian Pauli rows: rows `0..n` are the
//! destabilizers, rows `n..2n` the stabilizer generators. Destabilizer `i`
//! anticommutes with stabilizer `i` and commutes with every other
//! stabilizer, which lets measurement find the group decomposition of an
//! observable without a search. Gates conjugate every row, `r -> U r U†`.
//!
//! Phase convention: `S = diag(1, i)`, so `S: X -> Y, Y -> -X, Z -> Z`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::backend::{execute, OutcomeSource, RngOutcomes, Simulator};
use crate::bitmatrix::BitMatrix;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, SinglePauli};

/// Result of a Pauli measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    /// Eigenvalue, `+1` or `-1`.
    pub outcome: i8,
    /// True when the state already fixed the outcome.
    pub deterministic: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    // 2n rows by 2n+1 columns: x bits, z bits, sign bit.
    bits: BitMatrix,
}

impl StabilizerTableau {
    /// `|0…0⟩`: stabilizers `+Z_i`, destabilizers `+X_i`.
    pub fn new_zero_state(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        let mut bits = BitMatrix::zeros(2 * n, 2 * n + 1);
        for i in 0..n {
            bits.set(i, i, true);
            bits.set(n + i, n + i, true);
        }
        Ok(StabilizerTableau { n, bits })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Bytes held by the tableau bit storage: Θ(n²).
    pub fn state_bytes(&self) -> usize {
        self.bits.storage_bytes()
    }

    fn sign_col(&self) -> usize {
        2 * self.n
    }

    fn row(&self, r: usize) -> PauliString {
        let x = self.bits.read(r, 0, self.n);
        let z = self.bits.read(r, self.n, self.n);
        let phase = if self.bits.get(r, self.sign_col()) { 2 } else { 0 };
        PauliString::from_words(self.n, phase, x, z).expect("row words match qubit count")
    }

    fn set_row(&mut self, r: usize, p: &PauliString) {
        debug_assert!(p.is_hermitian());
        self.bits.write(r, 0, self.n, p.x_words());
        self.bits.write(r, self.n, self.n, p.z_words());
        let sc = self.sign_col();
        self.bits.set(r, sc, p.phase_exp() == 2);
    }

    pub fn stabilizer(&self, i: usize) -> PauliString {
        self.row(self.n + i)
    }

    pub fn destabilizer(&self, i: usize) -> PauliString {
        self.row(i)
    }

    pub fn stabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|i| self.stabilizer(i)).collect()
    }

    pub fn destabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|i| self.destabilizer(i)).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "qubit",
                index: q,
                len: self.n,
            });
        }
        Ok(())
    }

    /// Conjugates every row by a Gottesman-Knill gate.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if !gate.is_clifford() {
            return Err(gate.unsupported());
        }
        gate.check(self.n)?;
        let (n, sc) = (self.n, self.sign_col());
        let m = &mut self.bits;
        match *gate {
            Gate::H(q) => {
                for r in 0..2 * n {
                    let (x, z) = (m.get(r, q), m.get(r, n + q));
                    if x && z {
                        m.flip(r, sc);
                    }
                    m.set(r, q, z);
                    m.set(r, n + q, x);
                }
            }
            Gate::S(q) => {
                for r in 0..2 * n {
                    let (x, z) = (m.get(r, q), m.get(r, n + q));
                    if x && z {
                        m.flip(r, sc);
                    }
                    if x {
                        m.flip(r, n + q);
                    }
                }
            }
            Gate::X(q) => {
                for r in 0..2 * n {
                    if m.get(r, n + q) {
                        m.flip(r, sc);
                    }
                }
            }
            Gate::Z(q) => {
                for r in 0..2 * n {
                    if m.get(r, q) {
                        m.flip(r, sc);
                    }
                }
            }
            Gate::Y(q) => {
                for r in 0..2 * n {
                    if m.get(r, q) ^ m.get(r, n + q) {
                        m.flip(r, sc);
                    }
                }
            }
            Gate::Cnot { control: c, target: t } => {
                for r in 0..2 * n {
                    let (xc, zc) = (m.get(r, c), m.get(r, n + c));
                    let (xt, zt) = (m.get(r, t), m.get(r, n + t));
                    if xc && zt && (xt == zc) {
                        m.flip(r, sc);
                    }
                    if xc {
                        m.flip(r, t);
                    }
                    if zt {
                        m.flip(r, n + c);
                    }
                }
            }
            Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..) => unreachable!("rejected above"),
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::H(q))?;
        Ok(self)
    }

    pub fn s(&mut self, q: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::S(q))?;
        Ok(self)
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::X(q))?;
        Ok(self)
    }

    pub fn y(&mut self, q: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::Y(q))?;
        Ok(self)
    }

    pub fn z(&mut self, q: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::Z(q))?;
        Ok(self)
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.apply_gate(&Gate::Cnot { control, target })?;
        Ok(self)
    }

    fn check_observable(&self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        if !p.is_hermitian() {
            return Err(Error::NonHermitian { label: p.to_label() });
        }
        Ok(())
    }

    fn first_anticommuting_stabilizer(&self, p: &PauliString) -> Option<usize> {
        (0..self.n).find(|&i| !self.stabilizer(i).commutes_unchecked(p))
    }

    /// Eigenvalue of `p` when it lies (up to sign) in the stabilizer group.
    /// Requires `p` to commute with every generator.
    fn group_sign(&self, p: &PauliString) -> Result<i8> {
        let mut acc = PauliString::identity(self.n);
        for i in 0..self.n {
            if !self.destabilizer(i).commutes_unchecked(p) {
                acc.mul_assign_right(&self.stabilizer(i));
            }
        }
        if !acc.same_factors(p) || !acc.is_hermitian() {
            return Err(Error::Consistency(format!(
                "{p} commutes with the stabilizer group but decomposes to {acc}"
            )));
        }
        Ok(if acc.phase_exp() == p.phase_exp() { 1 } else { -1 })
    }

    /// `+1`/`-1` if `±p` is a stabilizer, `0` if `p` anticommutes with one.
    pub fn expectation_pauli(&self, p: &PauliString) -> Result<i8> {
        self.check_observable(p)?;
        match self.first_anticommuting_stabilizer(p) {
            Some(_) => Ok(0),
            None => self.group_sign(p),
        }
    }

    /// Measures the Hermitian observable `p`, collapsing the state.
    pub fn measure_pauli<R: Rng + ?Sized>(&mut self, p: &PauliString, rng: &mut R) -> Result<Measurement> {
        self.measure_with(p, &mut RngOutcomes(rng))
    }

    /// As [`measure_pauli`](Self::measure_pauli) with outcomes taken from
    /// `outcomes`; forced outcomes of zero probability are rejected.
    pub fn measure_with(&mut self, p: &PauliString, outcomes: &mut dyn OutcomeSource) -> Result<Measurement> {
        self.check_observable(p)?;
        let n = self.n;
        let Some(pivot) = self.first_anticommuting_stabilizer(p) else {
            let outcome = self.group_sign(p)?;
            let forced = outcomes.choose(if outcome < 0 { 1.0 } else { 0.0 });
            if forced != (outcome < 0) {
                return Err(Error::ImpossibleOutcome {
                    qubit: p.factors().position(|f| f != SinglePauli::I).unwrap_or(0),
                    outcome: forced as u8,
                });
            }
            return Ok(Measurement {
                outcome,
                deterministic: true,
            });
        };

        let pivot_row = self.row(n + pivot);
        for r in 0..2 * n {
            if r == pivot || r == n + pivot {
                continue;
            }
            let mut row = self.row(r);
            if !row.commutes_unchecked(p) {
                row.mul_assign_right(&pivot_row);
                self.set_row(r, &row);
            }
        }
        let one = outcomes.choose(0.5);
        self.set_row(pivot, &pivot_row);
        let new_stab = if one { p.clone().negated() } else { p.clone() };
        self.set_row(n + pivot, &new_stab);
        Ok(Measurement {
            outcome: if one { -1 } else { 1 },
            deterministic: false,
        })
    }

    /// Unique reduced generating set of the stabilizer group; equal for two
    /// tableaus iff they describe the same state.
    pub fn canonical_form(&self) -> Vec<PauliString> {
        canonical_generators(&self.stabilizers()).expect("tableau rows share one qubit count")
    }

    /// Canonical generators of the stabilizer elements supported on `qubits`,
    /// written on those qubits in the listed order.
    pub fn marginal_stabilizer(&self, qubits: &[usize]) -> Result<Vec<PauliString>> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let rest: Vec<usize> = (0..self.n).filter(|q| !qubits.contains(q)).collect();
        let mut columns: Vec<(usize, bool)> = rest.iter().map(|&q| (q, false)).collect();
        columns.extend(rest.iter().map(|&q| (q, true)));
        let outer = columns.len();
        columns.extend(qubits.iter().map(|&q| (q, false)));
        columns.extend(qubits.iter().map(|&q| (q, true)));

        let mut rows = self.stabilizers();
        let pivots = row_reduce(&mut rows, &columns);
        rows.truncate(pivots.len());
        pivots
            .iter()
            .zip(&rows)
            .filter(|(&col, _)| col >= outer)
            .map(|(_, row)| row.restrict(qubits))
            .collect()
    }

    /// Checks the tableau invariants: abelian stabilizers of full rank and
    /// the destabilizer pairing.
    pub fn validate(&self) -> Result<()> {
        let stabs = self.stabilizers();
        let destabs = self.destabilizers();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > i && !stabs[i].commutes_unchecked(&stabs[j]) {
                    return Err(Error::Consistency(format!("stabilizers {i} and {j} anticommute")));
                }
                let anti = !destabs[i].commutes_unchecked(&stabs[j]);
                if anti != (i == j) {
                    return Err(Error::Consistency(format!(
                        "destabilizer {i} vs stabilizer {j}: anticommute = {anti}"
                    )));
                }
            }
        }
        let mut rows = stabs;
        let rank = row_reduce(&mut rows, &standard_columns(self.n)).len();
        if rank != self.n {
            return Err(Error::Consistency(format!("stabilizer rank {rank} < {}", self.n)));
        }
        Ok(())
    }
}

fn standard_columns(n: usize) -> Vec<(usize, bool)> {
    (0..n).map(|q| (q, false)).chain((0..n).map(|q| (q, true))).collect()
}

fn bit_at(p: &PauliString, (q, is_z): (usize, bool)) -> bool {
    let (x, z) = p.get(q).bits();
    if is_z {
        z
    } else {
        x
    }
}

/// Gauss-Jordan elimination of commuting Pauli rows over GF(2) in the given
/// column order, tracking phases. Returns the pivot column index (into
/// `columns`) of each leading row; rows past the rank become identities.
fn row_reduce(rows: &mut [PauliString], columns: &[(usize, bool)]) -> Vec<usize> {
    let mut pivots = Vec::new();
    for (ci, &col) in columns.iter().enumerate() {
        let rank = pivots.len();
        let Some(found) = (rank..rows.len()).find(|&r| bit_at(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && bit_at(row, col) {
                row.mul_assign_right(&pivot);
            }
        }
        pivots.push(ci);
        if pivots.len() == rows.len() {
            break;
        }
    }
    pivots
}

/// Reduced row-echelon generating set for the group generated by
/// `generators` (x columns by qubit index, then z columns). Generators must
/// be Hermitian, share one qubit count and pairwise commute.
pub fn canonical_generators(generators: &[PauliString]) -> Result<Vec<PauliString>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let n = first.num_qubits();
    for (i, g) in generators.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.num_qubits(),
            });
        }
        if !g.is_hermitian() {
            return Err(Error::NonHermitian { label: g.to_label() });
        }
        for h in &generators[i + 1..] {
            if !g.commutes_unchecked(h) {
                return Err(Error::Consistency(format!("generators {g} and {h} anticommute")));
            }
        }
    }
    let mut rows = generators.to_vec();
    let rank = row_reduce(&mut rows, &standard_columns(n)).len();
    if rows[rank..].iter().any(|r| r.phase_exp() != 0) {
        return Err(Error::Consistency("generators produce -I".into()));
    }
    rows.truncate(rank);
    Ok(rows)
}

impl Simulator for StabilizerTableau {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        StabilizerTableau::apply_gate(self, gate)
    }

    fn measure_qubit(&mut self, qubit: usize, outcomes: &mut dyn OutcomeSource) -> Result<bool> {
        self.check_qubit(qubit)?;
        let z = PauliString::single(self.n, qubit, SinglePauli::Z)?;
        let m = self.measure_with(&z, outcomes).map_err(|e| match e {
            Error::ImpossibleOutcome { outcome, .. } => Error::ImpossibleOutcome { qubit, outcome },
            other => other,
        })?;
        Ok(m.outcome < 0)
    }
}

/// Runs a Gottesman-Knill circuit from `|0…0⟩` with a seeded PRNG.
pub fn run_circuit(circuit: &Circuit, seed: u64) -> Result<(StabilizerTableau, Vec<bool>)> {
    run_circuit_with(circuit, &mut RngOutcomes(ChaCha8Rng::seed_from_u64(seed)))
}

pub fn run_circuit_with(circuit: &Circuit, outcomes: &mut dyn OutcomeSource) -> Result<(StabilizerTableau, Vec<bool>)> {
    if let Some(g) = circuit.first_non_clifford() {
        return Err(g.unsupported());
    }
    let mut t = StabilizerTableau::new_zero_state(circuit.num_qubits())?;
    let clbits = execute(&mut t, circuit, outcomes)?;
    Ok((t, clbits))
}

/// One row per line: destabilizers, then stabilizers.
impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..2 * self.n {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerTableau(n={})\n{self}", self.n)
    }
}
