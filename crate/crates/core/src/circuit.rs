//! Gate lists and the plain-text circuit format.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! H 1
//! CNOT 1 2
//! ```
//!
//! Indices in the file are 1-based; in memory they are 0-based.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    X(usize),
    Y(usize),
    Z(usize),
    T(usize),
    Tdg(usize),
}

impl Gate {
    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot(a, b) => vec![a, b],
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::T(q) | Gate::Tdg(q) => {
                vec![q]
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Cnot(..) => "CNOT",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::T(_) => "T",
            Gate::Tdg(_) => "TDG",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot(a, b) => write!(f, "CNOT {} {}", a + 1, b + 1),
            g => write!(f, "{} {}", g.name(), g.qubits()[0] + 1),
        }
    }
}

/// An `n`-qubit gate sequence over the Clifford set plus `T`/`T†`, applied to `|0ⁿ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { index: q, n: self.n });
            }
        }
        if let Gate::Cnot(a, b) = gate {
            if a == b {
                return Err(Error::InvalidParameter(format!(
                    "CNOT control and target are both qubit {}",
                    a + 1
                )));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(Gate::is_clifford)
    }

    /// Number of `T`/`T†` gates.
    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_clifford()).count()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some(c) = circuit.as_mut() else {
                if tokens.len() == 2 && tokens[0].eq_ignore_ascii_case("qubits") {
                    let n = tokens[1]
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad qubit count {:?}", tokens[1])))?;
                    circuit = Some(Circuit::new(n));
                    continue;
                }
                return Err(err("expected header `qubits N`".into()));
            };
            let index = |tok: &str| -> Result<usize> {
                let q = tok
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad qubit index {tok:?}")))?;
                if q == 0 || q > c.n {
                    return Err(err(format!("qubit index {q} outside [1, {}]", c.n)));
                }
                Ok(q - 1)
            };
            let name = tokens[0].to_ascii_uppercase();
            let arity = if name == "CNOT" { 2 } else { 1 };
            if tokens.len() != arity + 1 {
                return Err(err(format!("{name} takes {arity} qubit index(es)")));
            }
            let gate = match name.as_str() {
                "H" => Gate::H(index(tokens[1])?),
                "S" => Gate::S(index(tokens[1])?),
                "X" => Gate::X(index(tokens[1])?),
                "Y" => Gate::Y(index(tokens[1])?),
                "Z" => Gate::Z(index(tokens[1])?),
                "T" => Gate::T(index(tokens[1])?),
                "TDG" => Gate::Tdg(index(tokens[1])?),
                "CNOT" => Gate::Cnot(index(tokens[1])?, index(tokens[2])?),
                other => return Err(err(format!("unknown gate {other:?}"))),
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::Parse {
            line: 0,
            message: "missing header `qubits N`".into(),
        })
    }
}

/// A circuit that contains only Clifford gates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordCircuit(Circuit);

impl CliffordCircuit {
    pub fn circuit(&self) -> &Circuit {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.0.gates
    }
}

impl TryFrom<Circuit> for CliffordCircuit {
    type Error = Error;

    fn try_from(c: Circuit) -> Result<Self> {
        match c.gates.iter().find(|g| !g.is_clifford()) {
            Some(g) => Err(Error::NonClifford(g.to_string())),
            None => Ok(CliffordCircuit(c)),
        }
    }
}

/// Random gates from `{H, S, CNOT}` on the qubits listed in `support`.
pub fn random_clifford_on<R: Rng + ?Sized>(
    n: usize,
    support: &[usize],
    gate_count: usize,
    rng: &mut R,
) -> Circuit {
    let mut c = Circuit::new(n);
    if support.is_empty() {
        return c;
    }
    for _ in 0..gate_count {
        let q = support[rng.random_range(0..support.len())];
        let gate = match rng.random_range(0..3) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            _ if support.len() > 1 => {
                let mut t = support[rng.random_range(0..support.len())];
                while t == q {
                    t = support[rng.random_range(0..support.len())];
                }
                Gate::Cnot(q, t)
            }
            _ => Gate::H(q),
        };
        c.push(gate).expect("support inside range");
    }
    c
}

/// Random Clifford circuit on all `n` qubits with `gate_count` gates.
pub fn random_clifford<R: Rng + ?Sized>(n: usize, gate_count: usize, rng: &mut R) -> Circuit {
    random_clifford_on(n, &(0..n).collect::<Vec<_>>(), gate_count, rng)
}

/// Random Clifford circuit with exactly `t` `T` gates spliced in at random positions.
pub fn random_clifford_t<R: Rng + ?Sized>(
    n: usize,
    gate_count: usize,
    t: usize,
    rng: &mut R,
) -> Circuit {
    let base = random_clifford(n, gate_count, rng);
    let mut gates = base.gates;
    for _ in 0..t {
        let at = rng.random_range(0..=gates.len());
        let q = rng.random_range(0..n);
        let g = if rng.random_bool(0.5) { Gate::T(q) } else { Gate::Tdg(q) };
        gates.insert(at, g);
    }
    Circuit::from_gates(n, gates).expect("indices in range")
}
