//! Wall time and state memory of the tableau and dense backends on random
//! Clifford circuits of growing width.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{random_clifford, Circuit};
use crate::dense::{DenseState, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::shots::Backend;
use crate::tableau::StabilizerTableau;

pub const SCALING_CSV_HEADER: &str = "n,gates,backend,wall_time_ns,peak_bytes";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measured {
    pub wall_time_ns: u128,
    /// Bytes held by the state representation, not by the process.
    pub peak_bytes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingRow {
    pub n: usize,
    pub gates: usize,
    pub backend: Backend,
    /// `None` when the backend's qubit cap forbids the run.
    pub result: Option<Measured>,
}

impl fmt::Display for ScalingRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},", self.n, self.gates, self.backend)?;
        match self.result {
            Some(m) => write!(f, "{},{}", m.wall_time_ns, m.peak_bytes),
            None => f.write_str("skipped:cap,skipped:cap"),
        }
    }
}

/// Widths `min, 2·min, 4·min, …` up to `max`.
pub fn doubling_widths(min: usize, max: usize) -> Result<Vec<usize>> {
    if min == 0 || min > max {
        return Err(Error::Domain {
            what: "qubit range",
            value: min as f64,
            domain: "1 <= min-qubits <= max-qubits",
        });
    }
    Ok(std::iter::successors(Some(min), |&n| n.checked_mul(2))
        .take_while(|&n| n <= max)
        .collect())
}

pub fn time_tableau(circuit: &Circuit) -> Result<Measured> {
    let gates = circuit.unitary_gates()?;
    let start = Instant::now();
    let mut t = StabilizerTableau::new_zero_state(circuit.num_qubits())?;
    for g in &gates {
        t.apply_gate(g)?;
    }
    let wall_time_ns = start.elapsed().as_nanos();
    Ok(Measured {
        wall_time_ns,
        peak_bytes: t.state_bytes(),
    })
}

pub fn time_dense(circuit: &Circuit) -> Result<Measured> {
    let gates = circuit.unitary_gates()?;
    let start = Instant::now();
    let mut s = DenseState::new_zero(circuit.num_qubits())?;
    for g in &gates {
        s.apply_gate(g)?;
    }
    let wall_time_ns = start.elapsed().as_nanos();
    Ok(Measured {
        wall_time_ns,
        peak_bytes: s.state_bytes(),
    })
}

/// One random Clifford circuit per width, seeded by `(seed, n)`; the tableau
/// always runs, the dense backend only up to its cap.
pub fn run_scaling(min_qubits: usize, max_qubits: usize, gates: usize, seed: u64) -> Result<Vec<ScalingRow>> {
    let mut rows = Vec::new();
    for n in doubling_widths(min_qubits, max_qubits)? {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n as u64);
        let circuit = random_clifford(n, gates, &mut rng)?;
        rows.push(ScalingRow {
            n,
            gates,
            backend: Backend::Tableau,
            result: Some(time_tableau(&circuit)?),
        });
        let dense = if n <= MAX_DENSE_QUBITS {
            Some(time_dense(&circuit)?)
        } else {
            None
        };
        rows.push(ScalingRow {
            n,
            gates,
            backend: Backend::Dense,
            result: dense,
        });
    }
    Ok(rows)
}

pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from(SCALING_CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_double() {
        assert_eq!(doubling_widths(16, 128).unwrap(), [16, 32, 64, 128]);
        assert_eq!(doubling_widths(3, 20).unwrap(), [3, 6, 12]);
        assert!(doubling_widths(0, 4).is_err());
        assert!(doubling_widths(8, 4).is_err());
    }

    #[test]
    fn dense_skipped_past_cap() {
        let rows = run_scaling(16, 64, 50, 1).unwrap();
        let csv = scaling_csv(&rows);
        assert!(csv.starts_with("n,gates,backend,wall_time_ns,peak_bytes\n16,50,tableau,"));
        assert!(csv.contains("\n64,50,dense,skipped:cap,skipped:cap\n"));
        let dense16 = rows.iter().find(|r| r.n == 16 && r.backend == Backend::Dense).unwrap();
        assert_eq!(dense16.result.unwrap().peak_bytes, 16 << 16);
    }

    #[test]
    fn tableau_memory_is_quadratic() {
        let rows = run_scaling(16, 128, 10, 0).unwrap();
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.backend == Backend::Tableau)
            .map(|r| (r.n as f64, r.result.unwrap().peak_bytes as f64))
            .collect();
        let slope = log_log_slope(&pts);
        assert!((slope - 2.0).abs() < 0.3, "slope {slope}");
    }

    #[test]
    fn slope_of_exact_power() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i as f64).powi(3))).collect();
        assert!((log_log_slope(&pts) - 3.0).abs() < 1e-12);
    }
}
