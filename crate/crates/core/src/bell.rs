//! Spin correlation models and the CHSH functional.
//!
//! Correlations `E(m, n) = ⟨σ_m ⊗ σ_n⟩` come from one of:
//! the singlet closed form `-m·n`; the sign-function hidden-variable model,
//! in closed form `2θ/π - 1` or sampled by Monte Carlo; a dense state; or a
//! stabilizer tableau, which only answers for signed Pauli axes.
//!
//! CHSH is `|E(m,n) + E(m,n')| + |E(m',n) - E(m',n')|`.
//!
//! Planar directions lie in the x–z plane, angle measured from +z:
//! `planar(a) = (sin a, 0, cos a)`.

use std::f64::consts::{PI, TAU};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};

use crate::dense::{DenseState, UNIT_TOLERANCE};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, SinglePauli};
use crate::tableau::StabilizerTableau;

/// A measurement orientation: a unit 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction([f64; 3]);

impl Direction {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Normalization { norm });
        }
        Ok(Direction([x, y, z]))
    }

    /// Unit vector at `angle` radians from +z towards +x.
    pub fn planar(angle: f64) -> Self {
        Direction([angle.sin(), 0.0, angle.cos()])
    }

    /// The +X, +Y or +Z axis.
    pub fn axis(p: SinglePauli) -> Option<Self> {
        match p {
            SinglePauli::X => Some(Direction([1.0, 0.0, 0.0])),
            SinglePauli::Y => Some(Direction([0.0, 1.0, 0.0])),
            SinglePauli::Z => Some(Direction([0.0, 0.0, 1.0])),
            SinglePauli::I => None,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Angle in `[0, π]`. `atan2(|m × n|, m · n)` keeps full precision near
    /// 0 and π, where `acos` of the dot product loses about half the digits.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        let cross = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1];
        let sin = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
        sin.atan2(self.dot(other))
    }

    /// `(axis, sign)` when this is `±X`, `±Y` or `±Z` within `1e-9`.
    pub fn pauli_axis(&self) -> Option<(SinglePauli, i8)> {
        let [x, y, z] = self.0;
        let near = |v: f64, t: f64| (v - t).abs() <= UNIT_TOLERANCE;
        for (axis, (a, b, c)) in [
            (SinglePauli::X, (x, y, z)),
            (SinglePauli::Y, (y, z, x)),
            (SinglePauli::Z, (z, x, y)),
        ] {
            if near(b, 0.0) && near(c, 0.0) {
                if near(a, 1.0) {
                    return Some((axis, 1));
                }
                if near(a, -1.0) {
                    return Some((axis, -1));
                }
            }
        }
        None
    }
}

/// The shared hidden variable: a unit vector assigned to both subsystems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenVariable(Direction);

impl HiddenVariable {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Direction::new(x, y, z).map(HiddenVariable)
    }

    pub fn direction(&self) -> &Direction {
        &self.0
    }
}

impl From<Direction> for HiddenVariable {
    fn from(d: Direction) -> Self {
        HiddenVariable(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

/// The four orientations of a CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub m: Direction,
    pub m_prime: Direction,
    pub n: Direction,
    pub n_prime: Direction,
}

impl ChshSettings {
    /// Planar settings from angles `(m, m', n, n')`.
    pub fn planar(angles: [f64; 4]) -> Self {
        let [a, b, c, d] = angles.map(Direction::planar);
        ChshSettings {
            m: a,
            m_prime: b,
            n: c,
            n_prime: d,
        }
    }

    /// The textbook violating orientations `(0, π/2, π/4, -π/4)`.
    pub fn tsirelson() -> Self {
        ChshSettings::planar([0.0, PI / 2.0, PI / 4.0, -PI / 4.0])
    }
}

/// Where `E(m, n)` comes from.
#[derive(Debug, Clone, Copy)]
pub enum CorrelationModel<'a> {
    QuantumSinglet,
    LhvClosedForm,
    /// Sign model sampled over `λ` uniform on the sphere. Every call reuses
    /// the same `λ` stream, so CHSH values are those of one LHV ensemble.
    LhvMonteCarlo {
        samples: u64,
        seed: u64,
        workers: usize,
    },
    Dense {
        state: &'a DenseState,
        qubits: (usize, usize),
    },
    /// Pauli observables only.
    Tableau {
        tableau: &'a StabilizerTableau,
        qubits: (usize, usize),
    },
}

impl CorrelationModel<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            CorrelationModel::QuantumSinglet => "singlet",
            CorrelationModel::LhvClosedForm => "lhv",
            CorrelationModel::LhvMonteCarlo { .. } => "lhv-mc",
            CorrelationModel::Dense { .. } => "dense",
            CorrelationModel::Tableau { .. } => "tableau",
        }
    }

    /// `E(m, n)`, always in `[-1, 1]`.
    pub fn correlation(&self, m: &Direction, n: &Direction) -> Result<f64> {
        match *self {
            CorrelationModel::QuantumSinglet => Ok(singlet_correlation(m, n)),
            CorrelationModel::LhvClosedForm => lhv_correlation(m.angle_to(n)),
            CorrelationModel::LhvMonteCarlo { samples, seed, workers } => {
                Ok(lhv_monte_carlo(m, n, samples, seed, workers).mean)
            }
            CorrelationModel::Dense {
                state,
                qubits: (q1, q2),
            } => state.expectation_spin_pair(q1, m.as_array(), q2, n.as_array()),
            CorrelationModel::Tableau {
                tableau,
                qubits: (q1, q2),
            } => {
                let unsupported = |d: &Direction| {
                    let [x, y, z] = d.as_array();
                    Error::UnsupportedObservable { x, y, z }
                };
                let (pa, sa) = m.pauli_axis().ok_or_else(|| unsupported(m))?;
                let (pb, sb) = n.pauli_axis().ok_or_else(|| unsupported(n))?;
                let mut obs = PauliString::identity(tableau.num_qubits());
                obs.set(q1, pa)?;
                obs.set(q2, pb)?;
                Ok((sa * sb * tableau.expectation_pauli(&obs)?) as f64)
            }
        }
    }
}

/// Singlet correlation `-m·n = -cos θ`.
pub fn singlet_correlation(m: &Direction, n: &Direction) -> f64 {
    -m.dot(n)
}

fn sign(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Sign-model outcome: Alice `sign(m·λ)`, Bob `-sign(n·λ)`, with `sign(0) = +1`.
pub fn lhv_outcome(lambda: &HiddenVariable, dir: &Direction, party: Party) -> i8 {
    let s = sign(dir.dot(lambda.direction()));
    match party {
        Party::Alice => s,
        Party::Bob => -s,
    }
}

/// Outcome-pair probabilities of the sign model at relative angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProbabilities {
    pub pp: f64,
    pub mm: f64,
    pub pm: f64,
    pub mp: f64,
}

impl JointProbabilities {
    pub fn total(&self) -> f64 {
        self.pp + self.mm + self.pm + self.mp
    }

    /// `P(same) - P(different)`.
    pub fn correlation(&self) -> f64 {
        self.pp + self.mm - self.pm - self.mp
    }
}

// Angles computed as `k·π/m` can land an ulp outside `[0, π]`.
const THETA_SLACK: f64 = 1e-12;

fn check_theta(theta: f64) -> Result<f64> {
    if !(-THETA_SLACK..=PI + THETA_SLACK).contains(&theta) {
        return Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "[0, π]",
        });
    }
    Ok(theta.clamp(0.0, PI))
}

/// `P(+,+) = P(-,-) = θ/2π`, `P(+,-) = P(-,+) = (1 - θ/π)/2`.
pub fn lhv_joint_probabilities(theta: f64) -> Result<JointProbabilities> {
    let theta = check_theta(theta)?;
    let same = theta / TAU;
    let diff = 0.5 * (1.0 - theta / PI);
    Ok(JointProbabilities {
        pp: same,
        mm: same,
        pm: diff,
        mp: diff,
    })
}

/// Sign-model correlation `2θ/π - 1`.
pub fn lhv_correlation(theta: f64) -> Result<f64> {
    let theta = check_theta(theta)?;
    Ok(2.0 * theta / PI - 1.0)
}

/// Monte Carlo estimate of the sign model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    /// Outcome counts `[(+,+), (-,-), (+,-), (-,+)]`.
    pub counts: [u64; 4],
}

impl MonteCarloEstimate {
    pub fn frequency(&self, idx: usize) -> f64 {
        self.counts[idx] as f64 / self.samples as f64
    }
}

fn sample_counts(m: &Direction, n: &Direction, samples: u64, rng: &mut impl Rng) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for _ in 0..samples {
        let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
        let lambda = HiddenVariable(Direction([x, y, z]));
        let a = lhv_outcome(&lambda, m, Party::Alice);
        let b = lhv_outcome(&lambda, n, Party::Bob);
        let idx = match (a, b) {
            (1, 1) => 0,
            (-1, -1) => 1,
            (1, -1) => 2,
            _ => 3,
        };
        counts[idx] += 1;
    }
    counts
}

/// Samples `λ` uniformly on the sphere and averages `A·B`. Samples are split
/// over `workers` ChaCha streams of `seed`; the result is a function of
/// `(seed, workers)`.
pub fn lhv_monte_carlo(m: &Direction, n: &Direction, samples: u64, seed: u64, workers: usize) -> MonteCarloEstimate {
    let workers = workers.max(1) as u64;
    let share = |w: u64| samples / workers + u64::from(w < samples % workers);
    let run = |w: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(w);
        sample_counts(m, n, share(w), &mut rng)
    };
    let per_worker: Vec<[u64; 4]> = if workers == 1 {
        vec![run(0)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || run(w))).collect();
            handles.into_iter().map(|h| h.join().expect("sampler thread")).collect()
        })
    };
    let mut counts = [0u64; 4];
    for c in per_worker {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
    }
    let total = samples.max(1) as f64;
    let same = (counts[0] + counts[1]) as f64;
    let mean = (2.0 * same - samples as f64) / total;
    // Products are ±1, so the sample variance is N/(N-1) · (1 - mean²).
    let var = if samples > 1 {
        (1.0 - mean * mean).max(0.0) * total / (total - 1.0)
    } else {
        0.0
    };
    MonteCarloEstimate {
        mean,
        std_error: (var / total).sqrt(),
        samples,
        counts,
    }
}

/// `|e_mn + e_mn'| + |e_m'n - e_m'n'|`.
pub fn chsh_from_correlations(e_mn: f64, e_mnp: f64, e_mpn: f64, e_mpnp: f64) -> f64 {
    (e_mn + e_mnp).abs() + (e_mpn - e_mpnp).abs()
}

pub fn chsh_value(s: &ChshSettings, model: &CorrelationModel<'_>) -> Result<f64> {
    Ok(chsh_from_correlations(
        model.correlation(&s.m, &s.n)?,
        model.correlation(&s.m, &s.n_prime)?,
        model.correlation(&s.m_prime, &s.n)?,
        model.correlation(&s.m_prime, &s.n_prime)?,
    ))
}

/// Planar CHSH value at angles `(m, m', n, n')`.
pub fn chsh_planar(angles: [f64; 4], model: &CorrelationModel<'_>) -> Result<f64> {
    chsh_value(&ChshSettings::planar(angles), model)
}

/// A local deterministic strategy: fixed ±1 answers for each setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub a: i8,
    pub a_prime: i8,
    pub b: i8,
    pub b_prime: i8,
}

impl DeterministicStrategy {
    /// All 16 strategies.
    pub fn all() -> Vec<DeterministicStrategy> {
        (0..16u8)
            .map(|k| {
                let bit = |i: u8| if (k >> i) & 1 == 1 { -1 } else { 1 };
                DeterministicStrategy {
                    a: bit(0),
                    a_prime: bit(1),
                    b: bit(2),
                    b_prime: bit(3),
                }
            })
            .collect()
    }
}

/// CHSH of a mixture of deterministic strategies (weights are normalized).
pub fn chsh_of_mixture(mixture: &[(f64, DeterministicStrategy)]) -> f64 {
    let total: f64 = mixture.iter().map(|(w, _)| w).sum();
    let avg = |f: fn(&DeterministicStrategy) -> i8| mixture.iter().map(|(w, s)| w * f(s) as f64).sum::<f64>() / total;
    chsh_from_correlations(
        avg(|s| s.a * s.b),
        avg(|s| s.a * s.b_prime),
        avg(|s| s.a_prime * s.b),
        avg(|s| s.a_prime * s.b_prime),
    )
}

/// Best planar CHSH value found and where.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshMaximum {
    pub value: f64,
    pub angles: [f64; 4],
}

impl ChshMaximum {
    pub fn settings(&self) -> ChshSettings {
        ChshSettings::planar(self.angles)
    }
}

/// Exhaustive maximum over every quadruple drawn from `angles`.
pub fn chsh_grid_max(model: &CorrelationModel<'_>, angles: &[f64]) -> Result<ChshMaximum> {
    // E depends on (Alice angle, Bob angle) only; tabulate it once.
    let k = angles.len();
    let mut table = vec![0.0; k * k];
    for (i, &a) in angles.iter().enumerate() {
        for (j, &b) in angles.iter().enumerate() {
            table[i * k + j] = model.correlation(&Direction::planar(a), &Direction::planar(b))?;
        }
    }
    let mut best = ChshMaximum {
        value: f64::NEG_INFINITY,
        angles: [0.0; 4],
    };
    for a in 0..k {
        for ap in 0..k {
            for b in 0..k {
                for bp in 0..k {
                    let v = chsh_from_correlations(
                        table[a * k + b],
                        table[a * k + bp],
                        table[ap * k + b],
                        table[ap * k + bp],
                    );
                    if v > best.value {
                        best = ChshMaximum {
                            value: v,
                            angles: [angles[a], angles[ap], angles[b], angles[bp]],
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Coarse grid of `resolution` angles per setting over `[0, 2π)`, then
/// `rounds` rounds of coordinate pattern search, halving the step each round.
/// Deterministic for fixed arguments.
pub fn chsh_max_search(model: &CorrelationModel<'_>, resolution: usize, rounds: usize) -> Result<ChshMaximum> {
    if resolution < 8 {
        return Err(Error::Domain {
            what: "grid resolution",
            value: resolution as f64,
            domain: "at least 8 points per angle",
        });
    }
    let grid: Vec<f64> = (0..resolution).map(|i| TAU * i as f64 / resolution as f64).collect();
    let mut best = chsh_grid_max(model, &grid)?;
    let mut step = TAU / resolution as f64 / 2.0;
    for _ in 0..rounds {
        loop {
            let mut improved = false;
            for coord in 0..4 {
                for dir in [1.0, -1.0] {
                    let mut trial = best.angles;
                    trial[coord] += dir * step;
                    let v = chsh_planar(trial, model)?;
                    if v > best.value {
                        best = ChshMaximum {
                            value: v,
                            angles: trial,
                        };
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        step /= 2.0;
    }
    Ok(best)
}

/// One row of a CHSH sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub angles: [f64; 4],
    pub chsh: f64,
}

/// Sweeps the family `(0, 2θ, θ, -θ)`, which passes through the maximal
/// violation at `θ = π/4`.
pub fn chsh_sweep(model: &CorrelationModel<'_>, thetas: &[f64]) -> Result<Vec<SweepRow>> {
    thetas
        .iter()
        .map(|&t| {
            let angles = [0.0, 2.0 * t, t, -t];
            Ok(SweepRow {
                angles,
                chsh: chsh_planar(angles, model)?,
            })
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "model,theta_m,theta_mp,theta_n,theta_np,chsh";

pub fn sweep_csv(model_name: &str, rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let [a, b, c, d] = r.angles.map(|v| format_significant(v, 9));
        out.push_str(&format!(
            "{model_name},{a},{b},{c},{d},{}\n",
            format_significant(r.chsh, 9)
        ));
    }
    out
}

/// `%.{digits}g`-style formatting without exponent notation for
/// `|x| ≥ 1e-9`; smaller magnitudes are written in scientific form.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    if x.abs() < 1e-9 {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn singlet_special_angles() {
        let z = Direction::planar(0.0);
        assert!((singlet_correlation(&z, &z) + 1.0).abs() < 1e-15);
        assert!((singlet_correlation(&z, &Direction::planar(PI)) - 1.0).abs() < 1e-15);
        assert!(singlet_correlation(&z, &Direction::planar(FRAC_PI_2)).abs() < 1e-15);
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new(0.0, 0.0, 1.0).is_ok());
        assert!(matches!(
            Direction::new(1.0, 1.0, 0.0),
            Err(Error::Normalization { .. })
        ));
        assert!(Direction::new(f64::NAN, 0.0, 0.0).is_err());
        assert_eq!(Direction::planar(FRAC_PI_2).pauli_axis(), Some((SinglePauli::X, 1)));
        assert_eq!(Direction::planar(PI).pauli_axis(), Some((SinglePauli::Z, -1)));
        assert_eq!(
            Direction::new(0.0, -1.0, 0.0).unwrap().pauli_axis(),
            Some((SinglePauli::Y, -1))
        );
        assert_eq!(Direction::planar(FRAC_PI_4).pauli_axis(), None);
        let a = Direction::planar(0.1);
        assert_eq!(a.angle_to(&a), 0.0);
        for tiny in [1e-9, 1e-12] {
            let near = Direction::planar(tiny).angle_to(&Direction::planar(0.0));
            assert!((near - tiny).abs() < 1e-20, "{near}");
            let far = Direction::planar(PI - tiny).angle_to(&Direction::planar(0.0));
            assert!((far - (PI - tiny)).abs() < 1e-15, "{far}");
        }
    }

    #[test]
    fn sign_model_outcomes() {
        let m = Direction::planar(0.4);
        let lambda = HiddenVariable::from(m);
        assert_eq!(lhv_outcome(&lambda, &m, Party::Alice), 1);
        assert_eq!(lhv_outcome(&lambda, &m, Party::Bob), -1);
        let perp = Direction::planar(0.4 + FRAC_PI_2);
        let lambda = HiddenVariable::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(lhv_outcome(&lambda, &perp, Party::Alice), 1);
    }

    #[test]
    fn joint_probabilities_at_landmarks() {
        let p0 = lhv_joint_probabilities(0.0).unwrap();
        assert_eq!((p0.pp, p0.mm, p0.pm, p0.mp), (0.0, 0.0, 0.5, 0.5));
        let pi = lhv_joint_probabilities(PI).unwrap();
        assert_eq!((pi.pp, pi.mm, pi.pm, pi.mp), (0.5, 0.5, 0.0, 0.0));
        let half = lhv_joint_probabilities(FRAC_PI_2).unwrap();
        for v in [half.pp, half.mm, half.pm, half.mp] {
            assert!((v - 0.25).abs() < 1e-15);
        }
        assert!(lhv_joint_probabilities(-0.1).is_err());
        assert!(lhv_joint_probabilities(3.2).is_err());
        assert_eq!(lhv_correlation(PI * 99.0 / 99.0).unwrap(), 1.0);
        assert!(lhv_joint_probabilities(f64::NAN).is_err());
    }

    #[test]
    fn lhv_correlation_landmarks() {
        assert_eq!(lhv_correlation(0.0).unwrap(), -1.0);
        assert!(lhv_correlation(FRAC_PI_2).unwrap().abs() < 1e-15);
        assert!((lhv_correlation(FRAC_PI_4).unwrap() + 0.5).abs() < 1e-15);
        assert!(lhv_correlation(4.0).is_err());
    }

    #[test]
    fn monte_carlo_is_exact_for_aligned_settings() {
        let m = Direction::planar(1.1);
        let est = lhv_monte_carlo(&m, &m, 5_000, 9, 3);
        assert_eq!(est.mean, -1.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.counts[0] + est.counts[1], 0);
    }

    #[test]
    fn monte_carlo_is_reproducible_per_seed_and_workers() {
        let (m, n) = (Direction::planar(0.0), Direction::planar(1.0));
        let a = lhv_monte_carlo(&m, &n, 20_001, 7, 4);
        let b = lhv_monte_carlo(&m, &n, 20_001, 7, 4);
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 20_001);
        let c = lhv_monte_carlo(&m, &n, 20_001, 8, 4);
        assert_ne!(a, c);
    }

    #[test]
    fn monte_carlo_tracks_closed_form() {
        let (m, n) = (Direction::planar(0.0), Direction::planar(FRAC_PI_4));
        let est = lhv_monte_carlo(&m, &n, 200_000, 1, 2);
        assert!((est.mean + 0.5).abs() < 4.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn chsh_at_textbook_angles() {
        let v = chsh_value(&ChshSettings::tsirelson(), &CorrelationModel::QuantumSinglet).unwrap();
        assert!((v - 2.0 * SQRT_2).abs() < 1e-12);
        let aligned = chsh_planar([0.0, FRAC_PI_2, FRAC_PI_2, 0.0], &CorrelationModel::QuantumSinglet).unwrap();
        assert!((aligned - 2.0).abs() < 1e-12);
        let lhv = chsh_value(&ChshSettings::tsirelson(), &CorrelationModel::LhvClosedForm).unwrap();
        // |-1/2 - 1/2| + |-1/2 - 1/2| with θ = π/4, π/4, π/4, 3π/4.
        assert!((lhv - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tableau_model_rejects_off_axis_settings() {
        let mut t = StabilizerTableau::new_zero_state(2).unwrap();
        t.x(0).unwrap().x(1).unwrap().h(0).unwrap().cnot(0, 1).unwrap();
        let model = CorrelationModel::Tableau {
            tableau: &t,
            qubits: (0, 1),
        };
        let err = chsh_value(&ChshSettings::tsirelson(), &model).unwrap_err();
        assert!(matches!(err, Error::UnsupportedObservable { .. }));
        let z = Direction::planar(0.0);
        assert_eq!(model.correlation(&z, &z).unwrap(), -1.0);
        assert_eq!(model.correlation(&z, &Direction::planar(PI)).unwrap(), 1.0);
        let v = chsh_planar([0.0, FRAC_PI_2, 0.0, FRAC_PI_2], &model).unwrap();
        assert_eq!(v, 2.0);
    }

    #[test]
    fn deterministic_strategies_give_exactly_two() {
        let all = DeterministicStrategy::all();
        assert_eq!(all.len(), 16);
        for s in all {
            assert_eq!(chsh_of_mixture(&[(1.0, s)]), 2.0);
        }
    }

    #[test]
    fn search_requires_resolution() {
        assert!(chsh_max_search(&CorrelationModel::QuantumSinglet, 4, 1).is_err());
    }

    #[test]
    fn search_refines_off_grid() {
        // 10 points per angle misses π/4; refinement must recover it.
        let best = chsh_max_search(&CorrelationModel::QuantumSinglet, 10, 40).unwrap();
        assert!(best.value > 2.0 * SQRT_2 - 1e-6, "{best:?}");
        assert!(best.value <= 2.0 * SQRT_2 + 1e-12);
    }

    #[test]
    fn sweep_csv_format() {
        let rows = chsh_sweep(&CorrelationModel::QuantumSinglet, &[FRAC_PI_4]).unwrap();
        let csv = sweep_csv("singlet", &rows);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], SWEEP_CSV_HEADER);
        assert_eq!(lines[1], "singlet,0,1.57079633,0.785398163,-0.785398163,2.82842712");
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(2.0 * SQRT_2, 9), "2.82842712");
        assert_eq!(format_significant(-0.5, 9), "-0.5");
        assert_eq!(format_significant(0.0, 9), "0");
        assert_eq!(format_significant(123456789.4, 9), "123456789");
        assert_eq!(format_significant(1e-17, 3), "1.00e-17");
    }
}
