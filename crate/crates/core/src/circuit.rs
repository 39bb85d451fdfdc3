//! Circuit model and the line-oriented circuit text format.
//!
//! ```text
//! # teleport |+> from qubit 0 to qubit 2
//! qubits 3
//! clbits 2
//! h 0
//! cnot 1 2
//! measure 0 -> 0
//! cif 0 z 2
//! rz 0.3 1        # dense backend only
//! ```

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Rx(f64, usize),
    Ry(f64, usize),
    Rz(f64, usize),
}

impl Gate {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
            Gate::Cnot { .. } => "cnot",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
        }
    }

    /// Member of the Gottesman-Knill gate set {H, S, X, Y, Z, CNOT}.
    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..))
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Rx(_, q) | Gate::Ry(_, q) | Gate::Rz(_, q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub(crate) fn check(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::IndexOutOfRange {
                    what: "qubit",
                    index: q,
                    len: n_qubits,
                });
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::UnsupportedInstruction {
                    instruction: self.to_string(),
                    reason: "cnot control and target must differ",
                });
            }
        }
        Ok(())
    }

    pub(crate) fn unsupported(&self) -> Error {
        Error::UnsupportedGate { gate: self.to_string() }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                write!(f, "{} {q}", self.mnemonic())
            }
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::Rx(theta, q) | Gate::Ry(theta, q) | Gate::Rz(theta, q) => {
                write!(f, "{} {theta:?} {q}", self.mnemonic())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(Gate),
    /// Z-basis measurement; the clbit records 1 for eigenvalue -1.
    Measure {
        qubit: usize,
        clbit: usize,
    },
    /// `gate` applied iff `clbit` currently holds 1.
    Conditional {
        clbit: usize,
        gate: Gate,
    },
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Gate(g) => write!(f, "{g}"),
            Instruction::Measure { qubit, clbit } => write!(f, "measure {qubit} -> {clbit}"),
            Instruction::Conditional { clbit, gate } => write!(f, "cif {clbit} {gate}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    n_clbits: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_clbits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::NoQubits);
        }
        Ok(Circuit {
            n_qubits,
            n_clbits,
            instructions: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits, 0)?;
        for g in gates {
            c.push(Instruction::Gate(g))?;
        }
        Ok(c)
    }

    /// The first `len` instructions, with the same registers.
    pub fn prefix(&self, len: usize) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            n_clbits: self.n_clbits,
            instructions: self.instructions[..len.min(self.instructions.len())].to_vec(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.n_clbits
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn push(&mut self, inst: Instruction) -> Result<()> {
        let check_clbit = |c: usize| {
            if c >= self.n_clbits {
                Err(Error::IndexOutOfRange {
                    what: "clbit",
                    index: c,
                    len: self.n_clbits,
                })
            } else {
                Ok(())
            }
        };
        match &inst {
            Instruction::Gate(g) => g.check(self.n_qubits)?,
            Instruction::Measure { qubit, clbit } => {
                Gate::Z(*qubit).check(self.n_qubits)?;
                check_clbit(*clbit)?;
            }
            Instruction::Conditional { clbit, gate } => {
                gate.check(self.n_qubits)?;
                check_clbit(*clbit)?;
            }
        }
        self.instructions.push(inst);
        Ok(())
    }

    pub fn gate(&mut self, g: Gate) -> Result<&mut Self> {
        self.push(Instruction::Gate(g))?;
        Ok(self)
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) -> Result<&mut Self> {
        self.push(Instruction::Measure { qubit, clbit })?;
        Ok(self)
    }

    pub fn conditional(&mut self, clbit: usize, g: Gate) -> Result<&mut Self> {
        self.push(Instruction::Conditional { clbit, gate: g })?;
        Ok(self)
    }

    /// First gate (conditional or not) outside the Gottesman-Knill set.
    pub fn first_non_clifford(&self) -> Option<&Gate> {
        self.instructions.iter().find_map(|inst| match inst {
            Instruction::Gate(g) | Instruction::Conditional { gate: g, .. } if !g.is_clifford() => Some(g),
            _ => None,
        })
    }

    pub fn is_clifford(&self) -> bool {
        self.first_non_clifford().is_none()
    }

    pub fn has_measurements(&self) -> bool {
        self.instructions
            .iter()
            .any(|i| matches!(i, Instruction::Measure { .. }))
    }

    pub fn count_conditionals(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Conditional { .. }))
            .count()
    }

    /// Unconditional gate list; fails on measurements and conditionals.
    pub fn unitary_gates(&self) -> Result<Vec<Gate>> {
        self.instructions
            .iter()
            .map(|inst| match inst {
                Instruction::Gate(g) => Ok(*g),
                other => Err(Error::UnsupportedInstruction {
                    instruction: other.to_string(),
                    reason: "expected a measurement-free, unconditional circuit",
                }),
            })
            .collect()
    }

    /// The inverse unitary circuit (`S†` is written as `S S S`).
    pub fn inverse(&self) -> Result<Circuit> {
        let mut inv = Circuit::new(self.n_qubits, self.n_clbits)?;
        for g in self.unitary_gates()?.into_iter().rev() {
            match g {
                Gate::S(q) => {
                    for _ in 0..3 {
                        inv.gate(Gate::S(q))?;
                    }
                }
                Gate::Rx(t, q) => {
                    inv.gate(Gate::Rx(-t, q))?;
                }
                Gate::Ry(t, q) => {
                    inv.gate(Gate::Ry(-t, q))?;
                }
                Gate::Rz(t, q) => {
                    inv.gate(Gate::Rz(-t, q))?;
                }
                other => {
                    inv.gate(other)?;
                }
            }
        }
        Ok(inv)
    }

    /// Renders the circuit in the text format accepted by [`parse_circuit`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        if self.n_clbits > 0 {
            writeln!(f, "clbits {}", self.n_clbits)?;
        }
        for inst in &self.instructions {
            writeln!(f, "{inst}")?;
        }
        Ok(())
    }
}

/// Random circuit of `gates` gates drawn uniformly from {H, S, CNOT} with
/// uniformly chosen qubits (H and S only when `n == 1`).
///
/// This is not a uniform sample over the Clifford group.
pub fn random_clifford<R: Rng + ?Sized>(n: usize, gates: usize, rng: &mut R) -> Result<Circuit> {
    let mut c = Circuit::new(n, 0)?;
    let kinds = if n > 1 { 3 } else { 2 };
    for _ in 0..gates {
        let q = rng.random_range(0..n);
        let g = match rng.random_range(0..kinds) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            _ => {
                let mut t = rng.random_range(0..n - 1);
                if t >= q {
                    t += 1;
                }
                Gate::Cnot { control: q, target: t }
            }
        };
        c.gate(g)?;
    }
    Ok(c)
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &code[s..i],
                    column: s + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &code[s..],
            column: s + 1,
        });
    }
    tokens
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn error_at(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self, expected: &str) -> Result<&Token<'a>> {
        if self.pos >= self.tokens.len() {
            return Err(self.error_at(self.end_column, format!("expected {expected}")));
        }
        self.pos += 1;
        Ok(&self.tokens[self.pos - 1])
    }

    fn index(&mut self, what: &str) -> Result<(usize, usize)> {
        let tok = self.next(what)?;
        let (text, column) = (tok.text, tok.column);
        text.parse::<usize>()
            .map(|v| (v, column))
            .map_err(|_| self.error_at(column, format!("expected {what}, found `{text}`")))
    }

    fn angle(&mut self) -> Result<f64> {
        let tok = self.next("rotation angle")?;
        let (text, column) = (tok.text, tok.column);
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.error_at(column, format!("malformed angle `{text}`"))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(tok) => Err(self.error_at(tok.column, format!("unexpected token `{}`", tok.text))),
            None => Ok(()),
        }
    }

    fn qubit(&mut self, n_qubits: usize) -> Result<usize> {
        let (q, column) = self.index("qubit index")?;
        if q >= n_qubits {
            return Err(self.error_at(column, format!("qubit {q} out of range (circuit has {n_qubits})")));
        }
        Ok(q)
    }

    fn clbit(&mut self, n_clbits: usize) -> Result<usize> {
        let (c, column) = self.index("clbit index")?;
        if c >= n_clbits {
            return Err(self.error_at(column, format!("clbit {c} out of range (circuit has {n_clbits})")));
        }
        Ok(c)
    }

    fn gate(&mut self, n_qubits: usize) -> Result<Gate> {
        let tok = self.next("gate mnemonic")?;
        let (name, column) = (tok.text, tok.column);
        let gate = match name {
            "h" => Gate::H(self.qubit(n_qubits)?),
            "s" => Gate::S(self.qubit(n_qubits)?),
            "x" => Gate::X(self.qubit(n_qubits)?),
            "y" => Gate::Y(self.qubit(n_qubits)?),
            "z" => Gate::Z(self.qubit(n_qubits)?),
            "cnot" => {
                let control = self.qubit(n_qubits)?;
                let target_col = self.tokens.get(self.pos).map_or(self.end_column, |t| t.column);
                let target = self.qubit(n_qubits)?;
                if control == target {
                    return Err(self.error_at(target_col, "cnot control and target must differ"));
                }
                Gate::Cnot { control, target }
            }
            "rx" | "ry" | "rz" => {
                let theta = self.angle()?;
                let q = self.qubit(n_qubits)?;
                match name {
                    "rx" => Gate::Rx(theta, q),
                    "ry" => Gate::Ry(theta, q),
                    _ => Gate::Rz(theta, q),
                }
            }
            other => return Err(self.error_at(column, format!("unknown mnemonic `{other}`"))),
        };
        Ok(gate)
    }
}

/// Parses the line-oriented circuit format. Errors carry 1-based line and
/// column numbers.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut n_qubits: Option<usize> = None;
    let mut n_clbits: Option<usize> = None;
    let mut circuit: Option<Circuit> = None;

    for (idx, raw) in text.lines().enumerate() {
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let mut lp = LineParser {
            line: idx + 1,
            end_column: raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1,
            tokens,
            pos: 0,
        };
        let head = lp.tokens[0].text;
        let head_col = lp.tokens[0].column;
        match head {
            "qubits" | "clbits" => {
                lp.pos = 1;
                if circuit.as_ref().is_some_and(|c| !c.is_empty()) {
                    return Err(lp.error_at(head_col, format!("`{head}` must precede all instructions")));
                }
                let slot = if head == "qubits" { &mut n_qubits } else { &mut n_clbits };
                if slot.is_some() {
                    return Err(lp.error_at(head_col, format!("duplicate `{head}` declaration")));
                }
                let (v, col) = lp.index("count")?;
                if head == "qubits" && v == 0 {
                    return Err(lp.error_at(col, "a circuit needs at least one qubit"));
                }
                *slot = Some(v);
                lp.finish()?;
                circuit = None;
            }
            _ => {
                let nq = n_qubits.ok_or_else(|| lp.error_at(head_col, "`qubits <n>` must be declared first"))?;
                let nc = n_clbits.unwrap_or(0);
                let c = match circuit.as_mut() {
                    Some(c) => c,
                    None => circuit.insert(Circuit::new(nq, nc)?),
                };
                let inst = match head {
                    "measure" => {
                        lp.pos = 1;
                        let qubit = lp.qubit(nq)?;
                        let arrow = lp.next("`->`")?;
                        if arrow.text != "->" {
                            let (col, t) = (arrow.column, arrow.text);
                            return Err(lp.error_at(col, format!("expected `->`, found `{t}`")));
                        }
                        let clbit = lp.clbit(nc)?;
                        Instruction::Measure { qubit, clbit }
                    }
                    "cif" => {
                        lp.pos = 1;
                        let clbit = lp.clbit(nc)?;
                        let gate = lp.gate(nq)?;
                        Instruction::Conditional { clbit, gate }
                    }
                    _ => Instruction::Gate(lp.gate(nq)?),
                };
                lp.finish()?;
                c.push(inst).map_err(|e| lp.error_at(head_col, e.to_string()))?;
            }
        }
    }

    match (circuit, n_qubits) {
        (Some(c), _) => Ok(c),
        (None, Some(nq)) => Circuit::new(nq, n_clbits.unwrap_or(0)),
        (None, None) => Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `qubits <n>` declaration".into(),
        }),
    }
}
