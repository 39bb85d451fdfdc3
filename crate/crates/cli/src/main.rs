use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stabilab::audit::{run_audit, AuditConfig};
use stabilab::bell::{chsh_planar, chsh_sweep, sweep_csv, CorrelationModel};
use stabilab::scaling::{run_scaling, scaling_csv};
use stabilab::shots::{run_shots, Backend};
use stabilab::{corpus, parse_circuit, Circuit, Error};

#[derive(Parser)]
#[command(
    name = "stabilab",
    version,
    about = "Stabilizer circuits, Bell correlations and CHSH audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a circuit file and print outcome frequencies and the final state.
    Run {
        /// Circuit file, or `corpus:<name>` for a shipped circuit.
        file: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Tableau)]
        backend: BackendArg,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Split shots across this many workers.
        #[arg(long, default_value_t = 1)]
        parallel_shots: usize,
    },
    /// Evaluate CHSH at one setting or along a sweep.
    Chsh {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Planar angles `a,a',b,b'` in radians.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "sweep",
            required_unless_present = "sweep"
        )]
        angles: Option<String>,
        /// `start:stop:count` over θ for the settings (0, 2θ, θ, -θ).
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// CHSH over all Pauli-axis settings on Bell and random stabilizer states.
    Audit {
        #[arg(long, default_value_t = 500)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only audit random product states.
        #[arg(long)]
        product_only: bool,
    },
    /// Time both backends on random Clifford circuits of doubling width.
    Bench {
        #[arg(long, default_value_t = 4)]
        min_qubits: usize,
        #[arg(long, default_value_t = 64)]
        max_qubits: usize,
        #[arg(long, default_value_t = 1000)]
        gates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Tableau,
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Singlet,
    Lhv,
    LhvMc,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse { .. }) | Failure::Usage(_) => 2,
            Failure::Lib(Error::UnsupportedGate { .. } | Error::UnsupportedObservable { .. }) => 3,
            Failure::Lib(Error::Capacity { .. }) => 4,
            Failure::Lib(_) | Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
        }
    }
}

fn load_circuit(path: &str) -> Result<Circuit, Failure> {
    if let Some(name) = path.strip_prefix("corpus:") {
        return match corpus::get(name) {
            Some(c) => Ok(c?),
            None => Err(Failure::Usage(format!(
                "unknown corpus circuit `{name}` (available: {})",
                corpus::NAMES.join(", ")
            ))),
        };
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    Ok(parse_circuit(&text)?)
}

fn parse_floats(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("`{v}` is not a number")))
        })
        .collect()
}

fn parse_sweep(grid: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = grid.split(':').collect();
    let bad = || Failure::Usage(format!("sweep `{grid}` is not start:stop:count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Run {
            file,
            backend,
            shots,
            seed,
            parallel_shots,
        } => {
            let circuit = load_circuit(&file)?;
            let backend = match backend {
                BackendArg::Tableau => Backend::Tableau,
                BackendArg::Dense => Backend::Dense,
            };
            Ok(run_shots(&circuit, backend, shots, seed, parallel_shots)?.to_string())
        }
        Command::Chsh {
            model,
            angles,
            sweep,
            samples,
            seed,
            workers,
        } => {
            let model = match model {
                ModelArg::Singlet => CorrelationModel::QuantumSinglet,
                ModelArg::Lhv => CorrelationModel::LhvClosedForm,
                ModelArg::LhvMc => CorrelationModel::LhvMonteCarlo { samples, seed, workers },
            };
            if let Some(grid) = sweep {
                let rows = chsh_sweep(&model, &parse_sweep(&grid)?)?;
                return Ok(sweep_csv(model.name(), &rows));
            }
            let values = parse_floats(angles.as_deref().unwrap_or_default())?;
            let angles: [f64; 4] = values
                .try_into()
                .map_err(|_| Failure::Usage("--angles takes exactly four values".into()))?;
            Ok(format!("{:.9}\n", chsh_planar(angles, &model)?))
        }
        Command::Audit {
            states,
            seed,
            product_only,
        } => Ok(run_audit(&AuditConfig {
            states,
            seed,
            product_only,
        })?
        .to_csv()),
        Command::Bench {
            min_qubits,
            max_qubits,
            gates,
            seed,
        } => Ok(scaling_csv(&run_scaling(min_qubits, max_qubits, gates, seed)?)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
