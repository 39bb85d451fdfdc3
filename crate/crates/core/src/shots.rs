//! Seeded multi-shot execution on either backend.
//!
//! The instructions before the first measurement are deterministic, so they
//! run once; every shot clones that state and replays the rest.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backend::{bits_to_string, execute_from, ForcedOutcomes, RngOutcomes, Simulator};
use crate::circuit::{Circuit, Instruction};
use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::tableau::StabilizerTableau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Tableau,
    Dense,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Tableau => "tableau",
            Backend::Dense => "dense",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tableau" => Ok(Backend::Tableau),
            "dense" => Ok(Backend::Dense),
            other => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown backend `{other}` (expected tableau or dense)"),
            }),
        }
    }
}

/// Everything needed to reproduce and compare a shot run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub seed: u64,
    pub backend: Backend,
    pub shots: usize,
    pub workers: usize,
    /// Classical register after each shot, clbit 0 leftmost.
    pub outcomes: Vec<String>,
    /// Canonical stabilizers (tableau) or amplitude CSV (dense) after the
    /// last shot.
    pub final_state: String,
}

impl RunRecord {
    pub fn frequencies(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        for o in &self.outcomes {
            *counts.entry(o.as_str()).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Display for RunRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "backend={} seed={} shots={} workers={}",
            self.backend, self.seed, self.shots, self.workers
        )?;
        writeln!(f, "outcome,count,frequency")?;
        for (bits, count) in self.frequencies() {
            let label = if bits.is_empty() { "-" } else { bits };
            writeln!(f, "{label},{count},{}", count as f64 / self.shots as f64)?;
        }
        writeln!(f, "final_state")?;
        f.write_str(&self.final_state)
    }
}

trait ShotState: Simulator + Clone + Send + Sync {
    fn render(&self) -> String;
}

impl ShotState for StabilizerTableau {
    fn render(&self) -> String {
        self.canonical_form().iter().map(|p| format!("{p}\n")).collect()
    }
}

impl ShotState for DenseState {
    fn render(&self) -> String {
        self.amplitude_csv()
    }
}

fn first_measurement(circuit: &Circuit) -> usize {
    circuit
        .instructions()
        .iter()
        .position(|i| matches!(i, Instruction::Measure { .. }))
        .unwrap_or(circuit.len())
}

/// Runs `shots` shots of `circuit` from `|0…0⟩`.
///
/// Shots are split into `workers` contiguous blocks; worker `w` draws from
/// stream `w` of a ChaCha8 generator seeded with `seed`. The record depends
/// only on `(circuit, backend, shots, seed, workers)`.
pub fn run_shots(circuit: &Circuit, backend: Backend, shots: usize, seed: u64, workers: usize) -> Result<RunRecord> {
    if shots == 0 {
        return Err(Error::Domain {
            what: "shot count",
            value: 0.0,
            domain: "at least 1",
        });
    }
    if workers == 0 {
        return Err(Error::Domain {
            what: "worker count",
            value: 0.0,
            domain: "at least 1",
        });
    }
    let (outcomes, final_state) = match backend {
        Backend::Tableau => {
            if let Some(g) = circuit.first_non_clifford() {
                return Err(g.unsupported());
            }
            shots_on(
                StabilizerTableau::new_zero_state(circuit.num_qubits())?,
                circuit,
                shots,
                seed,
                workers,
            )?
        }
        Backend::Dense => shots_on(
            DenseState::new_zero(circuit.num_qubits())?,
            circuit,
            shots,
            seed,
            workers,
        )?,
    };
    Ok(RunRecord {
        seed,
        backend,
        shots,
        workers,
        outcomes,
        final_state,
    })
}

fn shots_on<S: ShotState>(
    mut base: S,
    circuit: &Circuit,
    shots: usize,
    seed: u64,
    workers: usize,
) -> Result<(Vec<String>, String)> {
    let start = first_measurement(circuit);
    let mut prefix_bits = vec![false; circuit.num_clbits()];
    let prefix = circuit.prefix(start);
    execute_from(&mut base, &prefix, 0, &mut prefix_bits, &mut ForcedOutcomes::new([]))?;

    let workers = workers.min(shots);
    let per = shots.div_ceil(workers);
    let block = |w: usize| -> Result<(Vec<String>, Option<S>)> {
        let count = per.min(shots.saturating_sub(w * per));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(w as u64);
        let mut src = RngOutcomes(rng);
        let mut out = Vec::with_capacity(count);
        let mut last = None;
        for _ in 0..count {
            let mut state = base.clone();
            let mut bits = prefix_bits.clone();
            execute_from(&mut state, circuit, start, &mut bits, &mut src)?;
            out.push(bits_to_string(&bits));
            last = Some(state);
        }
        Ok((out, last))
    };
    let blocks: Vec<Result<(Vec<String>, Option<S>)>> = if workers == 1 {
        vec![block(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|w| scope.spawn(move || block(w))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("shot worker panicked"))
                .collect()
        })
    };
    let mut outcomes = Vec::with_capacity(shots);
    let mut last = None;
    for b in blocks {
        let (out, state) = b?;
        outcomes.extend(out);
        if state.is_some() {
            last = state;
        }
    }
    let final_state = last.map(|s| s.render()).unwrap_or_default();
    Ok((outcomes, final_state))
}
