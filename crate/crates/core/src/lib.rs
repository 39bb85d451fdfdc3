//! Stabilizer-formalism simulation and Bell/CHSH correlation laboratory.
//!
//! - [`pauli`]: exact n-qubit Pauli group algebra.
//! - [`tableau`]: Gottesman-Knill circuits on stabilizer tableaus.
//! - [`dense`]: brute-force state vectors, the oracle for the tableau and the
//!   only backend for rotations and arbitrary spin directions.
//! - [`bell`]: singlet and hidden-variable correlation models, the CHSH
//!   functional and its numerical maximization.
//! - [`audit`]: Clifford conjugation of Pauli observables and the CHSH audit
//!   of stabilizer states.
//! - [`circuit`], [`shots`], [`scaling`]: circuit files, seeded shot runs and
//!   the tableau-versus-dense scaling measurement behind the CLI.

pub mod audit;
pub mod backend;
pub mod bell;
mod bitmatrix;
pub mod circuit;
pub mod corpus;
pub mod dense;
pub mod error;
pub mod pauli;
pub mod scaling;
pub mod shots;
pub mod tableau;

pub use backend::{ForcedOutcomes, OutcomeSource, RngOutcomes, Simulator};
pub use bell::{ChshSettings, CorrelationModel, Direction, HiddenVariable};
pub use circuit::{parse_circuit, Circuit, Gate, Instruction};
pub use dense::DenseState;
pub use error::{Error, Result};
pub use pauli::{group_closure, PauliGroup, PauliString, SinglePauli};
pub use tableau::{canonical_generators, Measurement, StabilizerTableau};
