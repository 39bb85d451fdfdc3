//! Circuit files shipped with the library.

use crate::circuit::{parse_circuit, Circuit};
use crate::error::Result;

const FILES: [(&str, &str); 6] = [
    ("bell_phiplus", include_str!("../corpus/bell_phiplus.circ")),
    ("bell_psiplus", include_str!("../corpus/bell_psiplus.circ")),
    ("bell_phiminus", include_str!("../corpus/bell_phiminus.circ")),
    ("bell_psiminus", include_str!("../corpus/bell_psiminus.circ")),
    ("ghz3", include_str!("../corpus/ghz3.circ")),
    ("teleport_plus", include_str!("../corpus/teleport_plus.circ")),
];

pub const NAMES: [&str; 6] = [
    "bell_phiplus",
    "bell_psiplus",
    "bell_phiminus",
    "bell_psiminus",
    "ghz3",
    "teleport_plus",
];

/// Source text of a corpus circuit.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Parsed corpus circuit, `None` for an unknown name.
pub fn get(name: &str) -> Option<Result<Circuit>> {
    source(name).map(parse_circuit)
}
