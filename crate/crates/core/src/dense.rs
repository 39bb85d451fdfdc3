//! Brute-force state-vector simulation for small registers.
//!
//! Amplitude index convention: qubit 0 is the most significant bit.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::backend::{OutcomeSource, Simulator};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, SinglePauli};

/// Hard cap on dense register size (2^24 amplitudes, 256 MiB).
pub const MAX_DENSE_QUBITS: usize = 24;

/// Tolerance of `is_stabilized_by`.
pub const STABILIZER_TOLERANCE: f64 = 1e-10;

/// Tolerance used when checking that a direction is a unit vector.
pub const UNIT_TOLERANCE: f64 = 1e-9;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn pauli_matrix(p: SinglePauli) -> Matrix2 {
    match p {
        SinglePauli::I => [[ONE, ZERO], [ZERO, ONE]],
        SinglePauli::X => [[ZERO, ONE], [ONE, ZERO]],
        SinglePauli::Y => [[ZERO, -I], [I, ZERO]],
        SinglePauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// `σ·m = m_x X + m_y Y + m_z Z`.
pub fn spin_matrix(dir: [f64; 3]) -> Matrix2 {
    let [mx, my, mz] = dir;
    [
        [Complex64::new(mz, 0.0), Complex64::new(mx, -my)],
        [Complex64::new(mx, my), Complex64::new(-mz, 0.0)],
    ]
}

/// 2×2 unitary of a single-qubit gate; `None` for CNOT.
pub fn gate_matrix(gate: &Gate) -> Option<Matrix2> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rot = |theta: f64| ((theta / 2.0).cos(), (theta / 2.0).sin());
    Some(match *gate {
        Gate::H(_) => [[h.into(), h.into()], [h.into(), (-h).into()]],
        Gate::S(_) => [[ONE, ZERO], [ZERO, I]],
        Gate::X(_) => pauli_matrix(SinglePauli::X),
        Gate::Y(_) => pauli_matrix(SinglePauli::Y),
        Gate::Z(_) => pauli_matrix(SinglePauli::Z),
        Gate::Rx(t, _) => {
            let (c, s) = rot(t);
            [[c.into(), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), c.into()]]
        }
        Gate::Ry(t, _) => {
            let (c, s) = rot(t);
            [[c.into(), (-s).into()], [s.into(), c.into()]]
        }
        Gate::Rz(t, _) => [
            [Complex64::from_polar(1.0, -t / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, t / 2.0)],
        ],
        Gate::Cnot { .. } => return None,
    })
}

fn check_unit(dir: [f64; 3]) -> Result<()> {
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE || !norm.is_finite() {
        return Err(Error::Normalization { norm });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    fn check_size(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        if n > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                what: "dense register qubit count",
                requested: n,
                limit: MAX_DENSE_QUBITS,
            });
        }
        Ok(())
    }

    /// `|0…0⟩`.
    pub fn new_zero(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(DenseState { n, amps })
    }

    /// Computational basis state; `bits[q]` is qubit `q` (`'0'` or `'1'`).
    pub fn prepare_basis(n: usize, bits: &str) -> Result<Self> {
        Self::check_size(n)?;
        let chars: Vec<char> = bits.chars().collect();
        if chars.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: chars.len(),
            });
        }
        let mut index = 0usize;
        for (q, c) in chars.iter().enumerate() {
            match c {
                '0' => {}
                '1' => index |= 1 << (n - 1 - q),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        column: q + 1,
                        message: format!("expected 0 or 1, found `{c}`"),
                    })
                }
            }
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Ok(DenseState { n, amps })
    }

    /// Takes ownership of `2^n` amplitudes; they must be normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Self::check_size(n)?;
        let s = DenseState { n, amps };
        let norm = s.norm_sqr().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { norm });
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Bytes held by the amplitude vector: 16 · 2^n.
    pub fn state_bytes(&self) -> usize {
        self.amps.len() * std::mem::size_of::<Complex64>()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
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

    /// Applies a 2×2 matrix to qubit `q`.
    pub fn apply_matrix(&mut self, q: usize, m: &Matrix2) -> Result<()> {
        self.check_qubit(q)?;
        let mask = self.mask(q);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Applies any gate, rotations included.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.n)?;
        match (*gate, gate_matrix(gate)) {
            (Gate::Cnot { control, target }, _) => {
                let (cm, tm) = (self.mask(control), self.mask(target));
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
                Ok(())
            }
            (g, Some(m)) => self.apply_matrix(g.qubits()[0], &m),
            (g, None) => Err(g.unsupported()),
        }
    }

    pub fn run(&mut self, circuit: &Circuit, outcomes: &mut dyn OutcomeSource) -> Result<Vec<bool>> {
        crate::backend::execute(self, circuit, outcomes)
    }

    fn check_pauli(&self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// `P|ψ⟩` for any Pauli string (phase included).
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Vec<Complex64>> {
        self.check_pauli(p)?;
        let (mut xm, mut zm, mut ys) = (0usize, 0usize, 0u32);
        for (q, f) in p.factors().enumerate() {
            let (x, z) = f.bits();
            if x {
                xm |= self.mask(q);
            }
            if z {
                zm |= self.mask(q);
            }
            ys += (x && z) as u32;
        }
        let phase = I.powu((p.phase_exp() as u32 + ys) % 4);
        let mut out = vec![ZERO; self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            let sign = if (i & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[i ^ xm] = phase * sign * a;
        }
        Ok(out)
    }

    /// `‖P|ψ⟩ − |ψ⟩‖ < 1e-10` for Hermitian `P`.
    pub fn is_stabilized_by(&self, p: &PauliString) -> Result<bool> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian { label: p.to_label() });
        }
        let image = self.apply_pauli(p)?;
        let dist: f64 = image
            .iter()
            .zip(&self.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        Ok(dist < STABILIZER_TOLERANCE)
    }

    pub fn inner(&self, other: &[Complex64]) -> Complex64 {
        self.amps.iter().zip(other).map(|(a, b)| a.conj() * b).sum()
    }

    /// `⟨ψ|P|ψ⟩` for Hermitian `P`.
    pub fn expectation_pauli(&self, p: &PauliString) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian { label: p.to_label() });
        }
        Ok(self.inner(&self.apply_pauli(p)?).re)
    }

    /// `⟨ψ|σ·m|ψ⟩` on `qubit`.
    pub fn expectation_spin(&self, qubit: usize, dir: [f64; 3]) -> Result<f64> {
        check_unit(dir)?;
        let mut image = self.clone();
        image.apply_matrix(qubit, &spin_matrix(dir))?;
        Ok(self.inner(&image.amps).re)
    }

    /// `⟨ψ|(σ·m) ⊗ (σ·n)|ψ⟩` on qubits `q1 ≠ q2`, identity elsewhere.
    pub fn expectation_spin_pair(&self, q1: usize, dir1: [f64; 3], q2: usize, dir2: [f64; 3]) -> Result<f64> {
        check_unit(dir1)?;
        check_unit(dir2)?;
        if q1 == q2 {
            return Err(Error::UnsupportedInstruction {
                instruction: format!("spin pair on qubit {q1}"),
                reason: "the two observables must act on distinct qubits",
            });
        }
        let mut image = self.clone();
        image.apply_matrix(q1, &spin_matrix(dir1))?;
        image.apply_matrix(q2, &spin_matrix(dir2))?;
        Ok(self.inner(&image.amps).re)
    }

    /// Probability that measuring `qubit` in Z yields 1.
    pub fn probability_one(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = self.mask(qubit);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Born-rule Z measurement of `qubit`; collapses and renormalizes.
    pub fn measure(&mut self, qubit: usize, outcomes: &mut dyn OutcomeSource) -> Result<bool> {
        let p1 = self.probability_one(qubit)?.clamp(0.0, 1.0);
        let one = outcomes.choose(p1);
        let p = if one { p1 } else { 1.0 - p1 };
        if p < 1e-12 {
            return Err(Error::ImpossibleOutcome {
                qubit,
                outcome: one as u8,
            });
        }
        let mask = self.mask(qubit);
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & mask != 0) == one {
                *a *= scale;
            } else {
                *a = ZERO;
            }
        }
        Ok(one)
    }

    /// `|⟨φ|ψ⟩|²`; global phase is ignored.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        self.inner(&other.amps).norm_sqr()
    }

    /// `index,real,imaginary` rows for amplitudes with modulus above `1e-12`.
    pub fn amplitude_csv(&self) -> String {
        let mut s = String::from("index,real,imaginary\n");
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > 1e-12 {
                let _ = writeln!(s, "{i},{:.12},{:.12}", a.re, a.im);
            }
        }
        s
    }
}

impl Simulator for DenseState {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        DenseState::apply_gate(self, gate)
    }

    fn measure_qubit(&mut self, qubit: usize, outcomes: &mut dyn OutcomeSource) -> Result<bool> {
        self.measure(qubit, outcomes)
    }
}

/// Runs `circuit` from `|0…0⟩` on the dense backend.
pub fn run_circuit_dense(circuit: &Circuit, outcomes: &mut dyn OutcomeSource) -> Result<(DenseState, Vec<bool>)> {
    let mut s = DenseState::new_zero(circuit.num_qubits())?;
    let bits = s.run(circuit, outcomes)?;
    Ok((s, bits))
}
