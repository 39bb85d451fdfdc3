//! Shared execution path for the tableau and dense backends.

use rand::Rng;

use crate::circuit::{Circuit, Gate, Instruction};
use crate::error::Result;

/// Supplies measurement outcomes. Bit `true` is the `-1` eigenvalue.
pub trait OutcomeSource {
    /// Picks the outcome of a measurement that yields `true` with
    /// probability `p_one`.
    fn choose(&mut self, p_one: f64) -> bool;
}

/// Samples outcomes from a random number generator. Outcomes with
/// probability 0 or 1 do not consume randomness.
pub struct RngOutcomes<R>(pub R);

impl<R: Rng> OutcomeSource for RngOutcomes<R> {
    fn choose(&mut self, p_one: f64) -> bool {
        if p_one <= 0.0 {
            false
        } else if p_one >= 1.0 {
            true
        } else {
            self.0.random::<f64>() < p_one
        }
    }
}

/// Replays a fixed outcome sequence, one entry per measurement. The backend
/// rejects forced outcomes of zero probability. Once exhausted, the more
/// likely outcome is returned.
#[derive(Debug, Clone)]
pub struct ForcedOutcomes {
    outcomes: Vec<bool>,
    cursor: usize,
}

impl ForcedOutcomes {
    pub fn new(outcomes: impl Into<Vec<bool>>) -> Self {
        ForcedOutcomes {
            outcomes: outcomes.into(),
            cursor: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.cursor
    }
}

impl OutcomeSource for ForcedOutcomes {
    fn choose(&mut self, p_one: f64) -> bool {
        let out = self.outcomes.get(self.cursor).copied().unwrap_or(p_one > 0.5);
        self.cursor += 1;
        out
    }
}

/// A state that circuits can be executed on.
pub trait Simulator {
    fn num_qubits(&self) -> usize;

    fn apply_gate(&mut self, gate: &Gate) -> Result<()>;

    /// Z-basis measurement of `qubit`; returns `true` for eigenvalue -1.
    fn measure_qubit(&mut self, qubit: usize, outcomes: &mut dyn OutcomeSource) -> Result<bool>;
}

/// Runs `circuit` on `sim`, returning the classical register.
pub fn execute<S: Simulator + ?Sized>(
    sim: &mut S,
    circuit: &Circuit,
    outcomes: &mut dyn OutcomeSource,
) -> Result<Vec<bool>> {
    let mut clbits = vec![false; circuit.num_clbits()];
    execute_from(sim, circuit, 0, &mut clbits, outcomes)?;
    Ok(clbits)
}

/// Runs the instructions from index `start` on, updating `clbits` in place.
pub fn execute_from<S: Simulator + ?Sized>(
    sim: &mut S,
    circuit: &Circuit,
    start: usize,
    clbits: &mut [bool],
    outcomes: &mut dyn OutcomeSource,
) -> Result<()> {
    for inst in &circuit.instructions()[start..] {
        match inst {
            Instruction::Gate(g) => sim.apply_gate(g)?,
            Instruction::Measure { qubit, clbit } => {
                clbits[*clbit] = sim.measure_qubit(*qubit, outcomes)?;
            }
            Instruction::Conditional { clbit, gate } => {
                if clbits[*clbit] {
                    sim.apply_gate(gate)?;
                }
            }
        }
    }
    Ok(())
}

/// Renders a classical register with clbit 0 leftmost.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
