//! Clifford conjugation of Pauli observables and the CHSH audit of
//! stabilizer states.
//!
//! Conjugation by a Gottesman-Knill gate sends every Pauli string to a
//! single signed Pauli string. On one qubit that is a signed permutation of
//! the Bloch axes, so observables reachable by Clifford operations stay on
//! the signed X/Y/Z axes and every pair of them sits at a multiple of π/2.
//! The audit below enumerates exactly those observables on a two-qubit
//! stabilizer state and evaluates CHSH from tableau expectations.
//!
//! Only unsigned axes are enumerated: flipping the sign of an observable
//! flips the sign of the correlations it enters, which leaves the maximum of
//! the CHSH functional over the remaining choices unchanged.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::backend::ForcedOutcomes;
use crate::bell::{chsh_from_correlations, chsh_value, ChshSettings, CorrelationModel};
use crate::circuit::{random_clifford, Circuit, Gate};
use crate::dense::run_circuit_dense;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, SinglePauli};
use crate::tableau::StabilizerTableau;

/// `U p U†` for one Gottesman-Knill gate.
pub fn conjugate_pauli(p: &PauliString, gate: &Gate) -> Result<PauliString> {
    if !gate.is_clifford() {
        return Err(gate.unsupported());
    }
    gate.check(p.num_qubits())?;
    let mut out = p.clone();
    let mut flip = false;
    use SinglePauli::{I, X, Y, Z};
    let mut map1 = |q: usize, f: fn(SinglePauli) -> (SinglePauli, bool)| {
        let (g, neg) = f(out.get(q));
        out.set_unchecked(q, g);
        flip ^= neg;
    };
    match *gate {
        Gate::H(q) => map1(q, |f| match f {
            X => (Z, false),
            Z => (X, false),
            Y => (Y, true),
            I => (I, false),
        }),
        Gate::S(q) => map1(q, |f| match f {
            X => (Y, false),
            Y => (X, true),
            other => (other, false),
        }),
        Gate::X(q) => map1(q, |f| (f, matches!(f, Y | Z))),
        Gate::Y(q) => map1(q, |f| (f, matches!(f, X | Z))),
        Gate::Z(q) => map1(q, |f| (f, matches!(f, X | Y))),
        Gate::Cnot { control, target } => {
            let (xc, zc) = out.get(control).bits();
            let (xt, zt) = out.get(target).bits();
            flip = xc && zt && (xt == zc);
            out.set_unchecked(control, SinglePauli::from_bits(xc, zc ^ zt));
            out.set_unchecked(target, SinglePauli::from_bits(xt ^ xc, zt));
        }
        Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..) => unreachable!("rejected above"),
    }
    Ok(if flip { out.negated() } else { out })
}

/// `U p U†` for a measurement-free Clifford circuit `U`.
pub fn conjugate_pauli_by_circuit(p: &PauliString, circuit: &Circuit) -> Result<PauliString> {
    if p.num_qubits() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits(),
            found: p.num_qubits(),
        });
    }
    circuit
        .unitary_gates()?
        .iter()
        .try_fold(p.clone(), |acc, g| conjugate_pauli(&acc, g))
}

/// Integer 3×3 matrix acting on Bloch coordinates `(X, Y, Z)`.
pub type AxisMatrix = [[i8; 3]; 3];

const AXES: [SinglePauli; 3] = [SinglePauli::X, SinglePauli::Y, SinglePauli::Z];

fn axis_index(p: SinglePauli) -> Option<usize> {
    AXES.iter().position(|&a| a == p)
}

pub fn is_signed_permutation(m: &AxisMatrix) -> bool {
    let rows_ok = m.iter().all(|r| r.iter().filter(|&&v| v != 0).count() == 1);
    let cols_ok = (0..3).all(|j| (0..3).filter(|&i| m[i][j] != 0).count() == 1);
    let entries_ok = m.iter().flatten().all(|v| v.abs() <= 1);
    rows_ok && cols_ok && entries_ok
}

pub fn determinant(m: &AxisMatrix) -> i32 {
    let e = |i: usize, j: usize| m[i][j] as i32;
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

pub fn compose(a: &AxisMatrix, b: &AxisMatrix) -> AxisMatrix {
    let mut out = [[0i8; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The 48 signed permutation matrices.
pub fn signed_permutations() -> Vec<AxisMatrix> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in perms {
        for signs in 0..8u8 {
            let mut m = [[0i8; 3]; 3];
            for (j, &i) in perm.iter().enumerate() {
                m[i][j] = if (signs >> j) & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

/// Bloch-sphere action of a single-qubit Clifford circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochRotation {
    /// Column `j` is the image of axis `j` under `P ↦ U P U†`.
    pub matrix: AxisMatrix,
    /// Rotation angle in `[0, π]`.
    pub angle: f64,
    /// Unit rotation axis; `None` when the angle is 0 or π.
    pub axis: Option<[f64; 3]>,
}

/// Signed-permutation matrix of a single-qubit Clifford circuit, with the
/// rotation angle `arccos((tr - 1) / 2)`.
pub fn bloch_rotation_of(circuit: &Circuit) -> Result<BlochRotation> {
    if circuit.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: circuit.num_qubits(),
        });
    }
    let mut matrix = [[0i8; 3]; 3];
    for (j, &axis) in AXES.iter().enumerate() {
        let image = conjugate_pauli_by_circuit(&PauliString::from_factors(&[axis]), circuit)?;
        let i = axis_index(image.get(0)).ok_or_else(|| Error::Consistency(format!("axis {axis} mapped to {image}")))?;
        matrix[i][j] = image
            .sign()
            .ok_or_else(|| Error::Consistency(format!("axis {axis} mapped to non-Hermitian {image}")))?;
    }
    if !is_signed_permutation(&matrix) || determinant(&matrix) != 1 {
        return Err(Error::Consistency(format!(
            "axis action {matrix:?} is not a proper signed permutation"
        )));
    }
    let trace = (0..3).map(|i| matrix[i][i] as i32).sum::<i32>();
    let angle = ((trace as f64 - 1.0) / 2.0).clamp(-1.0, 1.0).acos();
    let axis = if trace == 3 || trace == -1 {
        None
    } else {
        let m = |i: usize, j: usize| matrix[i][j] as f64;
        let s = 2.0 * angle.sin();
        Some([
            (m(2, 1) - m(1, 2)) / s,
            (m(0, 2) - m(2, 0)) / s,
            (m(1, 0) - m(0, 1)) / s,
        ])
    };
    Ok(BlochRotation { matrix, angle, axis })
}

/// Closure of the H and S axis actions under composition.
pub fn single_qubit_clifford_actions() -> Result<BTreeSet<AxisMatrix>> {
    let gens: Vec<AxisMatrix> = [Gate::H(0), Gate::S(0)]
        .into_iter()
        .map(|g| Ok(bloch_rotation_of(&Circuit::from_gates(1, [g])?)?.matrix))
        .collect::<Result<_>>()?;
    let identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut seen = BTreeSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = compose(g, &m);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// One CHSH observable choice `(A, A', B, B')` over Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisQuadruple {
    pub a: SinglePauli,
    pub a_prime: SinglePauli,
    pub b: SinglePauli,
    pub b_prime: SinglePauli,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerAudit {
    pub max: f64,
    pub best: AxisQuadruple,
    /// All 81 quadruples with their CHSH value, in enumeration order.
    pub cases: Vec<(AxisQuadruple, f64)>,
}

/// CHSH over all 81 choices of `A, A' ∈ {X,Y,Z}` on qubit 0 and
/// `B, B' ∈ {X,Y,Z}` on qubit 1, from tableau expectations.
pub fn stabilizer_chsh_audit(t: &StabilizerTableau) -> Result<StabilizerAudit> {
    if t.num_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: t.num_qubits(),
        });
    }
    let mut e = [[0.0f64; 3]; 3];
    for (i, &a) in AXES.iter().enumerate() {
        for (j, &b) in AXES.iter().enumerate() {
            e[i][j] = t.expectation_pauli(&PauliString::from_factors(&[a, b]))? as f64;
        }
    }
    let mut cases = Vec::with_capacity(81);
    for a in 0..3 {
        for ap in 0..3 {
            for b in 0..3 {
                for bp in 0..3 {
                    let v = chsh_from_correlations(e[a][b], e[a][bp], e[ap][b], e[ap][bp]);
                    let q = AxisQuadruple {
                        a: AXES[a],
                        a_prime: AXES[ap],
                        b: AXES[b],
                        b_prime: AXES[bp],
                    };
                    cases.push((q, v));
                }
            }
        }
    }
    let (best, max) = cases.iter().fold(
        (cases[0].0, f64::NEG_INFINITY),
        |acc, &(q, v)| if v > acc.1 { (q, v) } else { acc },
    );
    Ok(StabilizerAudit { max, best, cases })
}

/// CHSH of the state prepared by a unitary 2-qubit `circuit`, measured with
/// arbitrary spin directions on the dense backend.
pub fn nonclifford_witness(circuit: &Circuit, settings: &ChshSettings) -> Result<f64> {
    circuit.unitary_gates()?;
    let (state, _) = run_circuit_dense(circuit, &mut ForcedOutcomes::new([]))?;
    chsh_value(
        settings,
        &CorrelationModel::Dense {
            state: &state,
            qubits: (0, 1),
        },
    )
}

/// The singlet-preparing circuit: X on both qubits, H on qubit 0, CNOT.
pub fn singlet_circuit() -> Circuit {
    Circuit::from_gates(
        2,
        [Gate::X(0), Gate::X(1), Gate::H(0), Gate::Cnot { control: 0, target: 1 }],
    )
    .expect("static circuit is valid")
}

/// Bell-state circuit from computational-basis input `|x0 x1⟩`.
pub fn bell_circuit(x0: bool, x1: bool) -> Circuit {
    let mut gates = Vec::new();
    if x0 {
        gates.push(Gate::X(0));
    }
    if x1 {
        gates.push(Gate::X(1));
    }
    gates.extend([Gate::H(0), Gate::Cnot { control: 0, target: 1 }]);
    Circuit::from_gates(2, gates).expect("static circuit is valid")
}

fn tableau_of(circuit: &Circuit) -> Result<StabilizerTableau> {
    let mut t = StabilizerTableau::new_zero_state(circuit.num_qubits())?;
    for g in circuit.unitary_gates()? {
        t.apply_gate(&g)?;
    }
    Ok(t)
}

/// Every n-qubit stabilizer state reachable from `|0…0⟩` by H, S and CNOT,
/// keyed by canonical form. There are 6 for n = 1 and 60 for n = 2.
pub fn enumerate_stabilizer_states(n: usize) -> Result<Vec<StabilizerTableau>> {
    let mut gates: Vec<Gate> = (0..n).flat_map(|q| [Gate::H(q), Gate::S(q)]).collect();
    for c in 0..n {
        for t in 0..n {
            if c != t {
                gates.push(Gate::Cnot { control: c, target: t });
            }
        }
    }
    let start = StabilizerTableau::new_zero_state(n)?;
    let mut seen = BTreeMap::from([(start.canonical_form(), start.clone())]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for g in &gates {
            let mut next = t.clone();
            next.apply_gate(g)?;
            if let Entry::Vacant(slot) = seen.entry(next.canonical_form()) {
                slot.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// Random 2-qubit stabilizer states from random H/S/CNOT circuits, or only
/// product states (single-qubit gates) when `product_only` is set.
pub fn random_two_qubit_states(count: usize, seed: u64, product_only: bool) -> Result<Vec<StabilizerTableau>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let circuit = if product_only {
                let gates: Vec<Gate> = (0..24)
                    .map(|_| {
                        let q = rng.random_range(0..2);
                        if rng.random_bool(0.5) {
                            Gate::H(q)
                        } else {
                            Gate::S(q)
                        }
                    })
                    .collect();
                Circuit::from_gates(2, gates)?
            } else {
                random_clifford(2, 40, &mut rng)?
            };
            tableau_of(&circuit)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditConfig {
    /// Random stabilizer states audited in addition to the four Bell states.
    pub states: usize,
    pub seed: u64,
    /// Audit product states only (no Bell states).
    pub product_only: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            states: 500,
            seed: 0,
            product_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub state_id: String,
    pub best: AxisQuadruple,
    pub chsh: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub pauli_max: f64,
    pub nonclifford: f64,
}

pub const AUDIT_CSV_HEADER: &str = "state_id,A,Aprime,B,Bprime,chsh";

impl AuditReport {
    pub fn summary_line(&self) -> String {
        format!("pauli_max={:.9} nonclifford={:.9}", self.pauli_max, self.nonclifford)
    }

    /// CSV with the maximizing quadruple of each state, then the summary.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(AUDIT_CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let q = r.best;
            let _ = writeln!(
                s,
                "{},{},{},{},{},{:.9}",
                r.state_id, q.a, q.a_prime, q.b, q.b_prime, r.chsh
            );
        }
        s.push_str(&self.summary_line());
        s.push('\n');
        s
    }
}

/// Audits the Bell states (unless `product_only`) and `config.states`
/// random stabilizer states, and evaluates the singlet at the maximally
/// violating planar settings on the dense backend.
pub fn run_audit(config: &AuditConfig) -> Result<AuditReport> {
    let mut states: Vec<(String, StabilizerTableau)> = Vec::new();
    if !config.product_only {
        for (name, x0, x1) in [
            ("bell_phiplus", false, false),
            ("bell_psiplus", false, true),
            ("bell_phiminus", true, false),
            ("bell_psiminus", true, true),
        ] {
            states.push((name.to_string(), tableau_of(&bell_circuit(x0, x1))?));
        }
    }
    let prefix = if config.product_only { "product" } else { "random" };
    for (i, t) in random_two_qubit_states(config.states, config.seed, config.product_only)?
        .into_iter()
        .enumerate()
    {
        states.push((format!("{prefix}_{i}"), t));
    }
    let mut rows = Vec::with_capacity(states.len());
    let mut pauli_max = f64::NEG_INFINITY;
    for (state_id, t) in states {
        let audit = stabilizer_chsh_audit(&t)?;
        pauli_max = pauli_max.max(audit.max);
        rows.push(AuditRow {
            state_id,
            best: audit.best,
            chsh: audit.max,
        });
    }
    let nonclifford = nonclifford_witness(&singlet_circuit(), &ChshSettings::tsirelson())?;
    Ok(AuditReport {
        rows,
        pauli_max,
        nonclifford,
    })
}

/// Angle between the images of axes `col_i` and `col_j`; a multiple of π/2
/// for any signed permutation.
pub fn axis_angle(a: &AxisMatrix, col_i: usize, col_j: usize) -> f64 {
    let dot: i32 = (0..3).map(|r| a[r][col_i] as i32 * a[r][col_j] as i32).sum();
    (dot as f64).clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::RngOutcomes;
    use crate::dense::DenseState;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn p(label: &str) -> PauliString {
        PauliString::from_label(label).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        let h = Circuit::from_gates(1, [Gate::H(0)]).unwrap();
        assert_eq!(conjugate_pauli_by_circuit(&p("Z"), &h).unwrap(), p("X"));
        let cx = Circuit::from_gates(2, [Gate::Cnot { control: 0, target: 1 }]).unwrap();
        assert_eq!(conjugate_pauli_by_circuit(&p("XI"), &cx).unwrap(), p("XX"));
        assert_eq!(conjugate_pauli_by_circuit(&p("IZ"), &cx).unwrap(), p("ZZ"));
        assert_eq!(conjugate_pauli_by_circuit(&p("YY"), &cx).unwrap(), p("-XZ"));
        let empty = Circuit::new(3, 0).unwrap();
        assert_eq!(conjugate_pauli_by_circuit(&p("-iXYZ"), &empty).unwrap(), p("-iXYZ"));
    }

    #[test]
    fn conjugation_rejects_non_clifford() {
        let c = Circuit::from_gates(1, [Gate::Rz(0.1, 0)]).unwrap();
        assert!(matches!(
            conjugate_pauli_by_circuit(&p("Z"), &c),
            Err(Error::UnsupportedGate { .. })
        ));
        let mut m = Circuit::new(1, 1).unwrap();
        m.measure(0, 0).unwrap();
        assert!(conjugate_pauli_by_circuit(&p("Z"), &m).is_err());
        assert!(conjugate_pauli_by_circuit(&p("ZZ"), &Circuit::new(1, 0).unwrap()).is_err());
    }

    // Dense oracle: U P U† |b⟩ for every basis state |b⟩, via U† = inverse circuit.
    fn dense_conjugate_matches(pauli: &PauliString, circuit: &Circuit, image: &PauliString) -> bool {
        let n = circuit.num_qubits();
        let inverse = circuit.inverse().unwrap();
        (0..1usize << n).all(|b| {
            let bits: String = (0..n)
                .map(|q| if (b >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' })
                .collect();
            let mut lhs = DenseState::prepare_basis(n, &bits).unwrap();
            let mut src = RngOutcomes(ChaCha8Rng::seed_from_u64(0));
            lhs.run(&inverse, &mut src).unwrap();
            let after_p = lhs.apply_pauli(pauli).unwrap();
            let mut lhs = DenseState::from_amplitudes(after_p).unwrap();
            lhs.run(circuit, &mut src).unwrap();
            let rhs = DenseState::prepare_basis(n, &bits).unwrap().apply_pauli(image).unwrap();
            lhs.amplitudes().iter().zip(&rhs).all(|(a, b)| (a - b).norm() < 1e-12)
        })
    }

    #[test]
    fn every_gate_matches_dense_conjugation() {
        let gates = [
            Gate::H(0),
            Gate::S(0),
            Gate::X(0),
            Gate::Y(1),
            Gate::Z(1),
            Gate::Cnot { control: 0, target: 1 },
            Gate::Cnot { control: 1, target: 0 },
        ];
        for g in gates {
            let c = Circuit::from_gates(2, [g]).unwrap();
            for a in SinglePauli::ALL {
                for b in SinglePauli::ALL {
                    for phase in 0..4 {
                        let pauli = PauliString::from_factors(&[a, b]).with_phase(phase);
                        let image = conjugate_pauli_by_circuit(&pauli, &c).unwrap();
                        assert!(dense_conjugate_matches(&pauli, &c, &image), "{g}: {pauli} -> {image}");
                    }
                }
            }
        }
    }

    #[test]
    fn bloch_angles_of_generators() {
        let rot = |gates: &[Gate]| bloch_rotation_of(&Circuit::from_gates(1, gates.to_vec()).unwrap()).unwrap();
        let s = rot(&[Gate::S(0)]);
        assert!((s.angle - FRAC_PI_2).abs() < 1e-12);
        let axis = s.axis.unwrap();
        assert!((axis[2] - 1.0).abs() < 1e-12 && axis[0].abs() < 1e-12);
        let h = rot(&[Gate::H(0)]);
        assert!((h.angle - PI).abs() < 1e-12);
        assert!(h.axis.is_none());
        let sh = rot(&[Gate::S(0), Gate::H(0)]);
        assert!((sh.angle - 2.0 * PI / 3.0).abs() < 1e-12);
        for g in [Gate::X(0), Gate::Y(0), Gate::Z(0)] {
            assert!((rot(&[g]).angle - PI).abs() < 1e-12);
        }
        assert_eq!(rot(&[]).angle, 0.0);
        assert!(bloch_rotation_of(&Circuit::new(2, 0).unwrap()).is_err());
    }

    #[test]
    fn clifford_axis_actions_are_the_rotation_group() {
        let actions = single_qubit_clifford_actions().unwrap();
        assert_eq!(actions.len(), 24);
        let proper: BTreeSet<_> = signed_permutations()
            .into_iter()
            .filter(|m| determinant(m) == 1)
            .collect();
        assert_eq!(actions, proper);
        for m in &actions {
            for i in 0..3 {
                for j in 0..3 {
                    let angle = axis_angle(m, i, j);
                    assert!(((angle / FRAC_PI_2).round() * FRAC_PI_2 - angle).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn audit_of_bell_and_product_states() {
        for (x0, x1) in [(false, false), (true, true)] {
            let t = tableau_of(&bell_circuit(x0, x1)).unwrap();
            let audit = stabilizer_chsh_audit(&t).unwrap();
            assert_eq!(audit.max, 2.0);
            assert_eq!(audit.cases.len(), 81);
        }
        let zero = StabilizerTableau::new_zero_state(2).unwrap();
        assert_eq!(stabilizer_chsh_audit(&zero).unwrap().max, 2.0);
        assert!(stabilizer_chsh_audit(&StabilizerTableau::new_zero_state(3).unwrap()).is_err());
    }

    #[test]
    fn audit_cross_checks_dense_expectations() {
        let c = bell_circuit(false, false);
        let t = tableau_of(&c).unwrap();
        let (dense, _) = run_circuit_dense(&c, &mut ForcedOutcomes::new([])).unwrap();
        for a in AXES {
            for b in AXES {
                let obs = PauliString::from_factors(&[a, b]);
                let e = t.expectation_pauli(&obs).unwrap() as f64;
                assert!((dense.expectation_pauli(&obs).unwrap() - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stabilizer_state_counts() {
        assert_eq!(enumerate_stabilizer_states(1).unwrap().len(), 6);
        assert_eq!(enumerate_stabilizer_states(2).unwrap().len(), 60);
    }

    #[test]
    fn witness_values() {
        let v = nonclifford_witness(&singlet_circuit(), &ChshSettings::tsirelson()).unwrap();
        assert!((v - 2.0 * SQRT_2).abs() < 1e-9);
        let product = Circuit::new(2, 0).unwrap();
        assert!(nonclifford_witness(&product, &ChshSettings::tsirelson()).unwrap() <= 2.0 + 1e-12);
        let axes = ChshSettings::planar([0.0, FRAC_PI_2, 0.0, FRAC_PI_2]);
        assert!(nonclifford_witness(&singlet_circuit(), &axes).unwrap() <= 2.0 + 1e-12);
    }

    #[test]
    fn audit_report_format() {
        let report = run_audit(&AuditConfig {
            states: 5,
            seed: 1,
            product_only: false,
        })
        .unwrap();
        assert_eq!(report.rows.len(), 9);
        assert_eq!(report.summary_line(), "pauli_max=2.000000000 nonclifford=2.828427125");
        let csv = report.to_csv();
        assert!(csv.starts_with("state_id,A,Aprime,B,Bprime,chsh\nbell_phiplus,"));
        assert!(csv.ends_with("pauli_max=2.000000000 nonclifford=2.828427125\n"));
        let again = run_audit(&AuditConfig {
            states: 5,
            seed: 1,
            product_only: false,
        })
        .unwrap();
        assert_eq!(report, again);
    }
}
