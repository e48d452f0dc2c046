//! Stabilizer circuits and their compilation into generator networks.
//!
//! Every gate expands into generator tensors only:
//!
//! | gate | network                                               |
//! |------|-------------------------------------------------------|
//! | H    | Hadamard node                                         |
//! | S    | copy with `|t¹⟩` fed into one leg                      |
//! | Z    | copy with `|t²⟩` fed into one leg                      |
//! | X    | H, then Z as above, then H                            |
//! | Y    | `S³` (copy with `|t³⟩`), then X as above, then S       |
//! | NOT  | XOR with the constant `|1⟩` fed into one input        |
//! | CN   | copy on the control, one copy output into XOR on the target |
//!
//! Each wire starts at a cup (the identity wire). A compiled circuit with a
//! fixed input contracts to the output state with one leg per wire; without
//! an input it contracts to the operator with legs `(outputs…, inputs…)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::generators::{copy_tensor, cup, hadamard, ket_one, ket_zero, t_vector, xor_tensor};
use crate::network::{LegRef, TensorNetwork};
use crate::tensor::{Amplitude, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("wire {wire} out of range for a {width}-wire circuit")]
    WireOutOfRange { wire: usize, width: usize },

    #[error("gate uses wire {0} twice")]
    DuplicateWire(usize),

    #[error("input has {got} bits, circuit has {width} wires")]
    InputLength { got: usize, width: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Not(usize),
    Cn { control: usize, target: usize },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::H(w) | Gate::S(w) | Gate::X(w) | Gate::Y(w) | Gate::Z(w) | Gate::Not(w) => vec![w],
            Gate::Cn { control, target } => vec![control, target],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Not(_) => "NOT",
            Gate::Cn { .. } => "CN",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for w in self.wires() {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

/// Gates applied left to right on numbered wires, with an optional basis
/// input (`input[w]` is the bit on wire `w`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    ops: Vec<Gate>,
    input: Option<Vec<bool>>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, ops: Vec::new(), input: None }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ops(&self) -> &[Gate] {
        &self.ops
    }

    pub fn input(&self) -> Option<&[bool]> {
        self.input.as_deref()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let wires = gate.wires();
        for (k, &w) in wires.iter().enumerate() {
            if w >= self.width {
                return Err(CircuitError::WireOutOfRange { wire: w, width: self.width });
            }
            if wires[..k].contains(&w) {
                return Err(CircuitError::DuplicateWire(w));
            }
        }
        self.ops.push(gate);
        Ok(())
    }

    pub fn with_gates(mut self, gates: impl IntoIterator<Item = Gate>) -> Result<Self, CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    pub fn set_input(&mut self, bits: Vec<bool>) -> Result<(), CircuitError> {
        if bits.len() != self.width {
            return Err(CircuitError::InputLength { got: bits.len(), width: self.width });
        }
        self.input = Some(bits);
        Ok(())
    }

    pub fn with_input(mut self, bits: Vec<bool>) -> Result<Self, CircuitError> {
        self.set_input(bits)?;
        Ok(self)
    }

    /// The input bits, or all zeros when none were given.
    pub fn input_or_zeros(&self) -> Vec<bool> {
        self.input.clone().unwrap_or_else(|| vec![false; self.width])
    }
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

impl FromStr for Circuit {
    type Err = CircuitError;

    /// Parses the line format: `wires N` header, one gate per line
    /// (`H 0`, `CN 0 1`, ...), optional `input 0110`, `#` comments.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut circuit: Option<Circuit> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| CircuitError::Parse { line, message };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let (head, args) = (tokens[0], &tokens[1..]);

            if head == "wires" {
                if circuit.is_some() {
                    return Err(err("repeated `wires` header".into()));
                }
                let [w] = args else {
                    return Err(err("expected `wires N`".into()));
                };
                let width = w.parse().map_err(|_| err(format!("bad wire count `{w}`")))?;
                circuit = Some(Circuit::new(width));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err("`wires N` header must come first".into()))?;

            if head == "input" {
                let [bits] = args else {
                    return Err(err("expected `input BITS`".into()));
                };
                let bits = parse_bits(bits).ok_or_else(|| err(format!("bad bit string `{bits}`")))?;
                c.set_input(bits).map_err(|e| err(e.to_string()))?;
                continue;
            }

            let wires: Vec<usize> = args
                .iter()
                .map(|a| a.parse().map_err(|_| err(format!("bad wire index `{a}`"))))
                .collect::<Result<_, _>>()?;
            let gate = match (head, wires.as_slice()) {
                ("H", &[w]) => Gate::H(w),
                ("S", &[w]) => Gate::S(w),
                ("X", &[w]) => Gate::X(w),
                ("Y", &[w]) => Gate::Y(w),
                ("Z", &[w]) => Gate::Z(w),
                ("NOT", &[w]) => Gate::Not(w),
                ("CN", &[control, target]) => Gate::Cn { control, target },
                ("H" | "S" | "X" | "Y" | "Z" | "NOT" | "CN", _) => {
                    return Err(err(format!("wrong number of wires for `{head}`")))
                }
                _ => return Err(err(format!("unknown gate `{head}`"))),
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(CircuitError::Parse { line: 0, message: "missing `wires N` header".into() })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wires {}", self.width)?;
        if let Some(bits) = &self.input {
            let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "input {s}")?;
        }
        for g in &self.ops {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

struct Builder {
    net: TensorNetwork,
    front: Vec<LegRef>,
}

impl Builder {
    fn single(&mut self, wire: usize, op: Tensor) {
        let node = self.net.add_node(op);
        self.net.bond(self.front[wire], (node, 1)).unwrap();
        self.front[wire] = (node, 0);
    }

    /// Copy with `|t^k⟩` on leg k; legs i and j act as (out, in).
    fn phase(&mut self, wire: usize, k: i64) {
        let d = self.net.add_node(copy_tensor());
        let t = self.net.add_node(t_vector(k));
        self.net.bond((d, 2), (t, 0)).unwrap();
        self.net.bond(self.front[wire], (d, 1)).unwrap();
        self.front[wire] = (d, 0);
    }

    fn pauli_x(&mut self, wire: usize) {
        self.single(wire, hadamard());
        self.phase(wire, 2);
        self.single(wire, hadamard());
    }

    fn gate(&mut self, gate: Gate) {
        match gate {
            Gate::H(w) => self.single(w, hadamard()),
            Gate::S(w) => self.phase(w, 1),
            Gate::Z(w) => self.phase(w, 2),
            Gate::X(w) => self.pauli_x(w),
            Gate::Y(w) => {
                self.phase(w, 3);
                self.pauli_x(w);
                self.phase(w, 1);
            }
            Gate::Not(w) => {
                let x = self.net.add_node(xor_tensor());
                let one = self.net.add_node(ket_one());
                self.net.bond((x, 1), (one, 0)).unwrap();
                self.net.bond(self.front[w], (x, 2)).unwrap();
                self.front[w] = (x, 0);
            }
            Gate::Cn { control, target } => {
                let d = self.net.add_node(copy_tensor());
                let x = self.net.add_node(xor_tensor());
                self.net.bond(self.front[control], (d, 0)).unwrap();
                self.net.bond((d, 2), (x, 1)).unwrap();
                self.net.bond(self.front[target], (x, 2)).unwrap();
                self.front[control] = (d, 1);
                self.front[target] = (x, 0);
            }
        }
    }
}

/// Compiles a circuit into a network of generator tensors.
pub fn compile(circuit: &Circuit) -> TensorNetwork {
    let mut net = TensorNetwork::new();
    let mut front = Vec::with_capacity(circuit.width);
    let mut inputs = Vec::new();
    for w in 0..circuit.width {
        let wire = net.add_node(cup());
        match circuit.input.as_ref().map(|bits| bits[w]) {
            Some(bit) => {
                let ket = net.add_node(if bit { ket_one() } else { ket_zero() });
                net.bond((ket, 0), (wire, 1)).unwrap();
            }
            None => inputs.push((wire, 1)),
        }
        front.push((wire, 0));
    }
    let mut b = Builder { net, front };
    for &g in &circuit.ops {
        b.gate(g);
    }
    let mut open = b.front;
    open.extend(inputs);
    b.net.set_open_legs(open).unwrap();
    b.net
}

/// Copy on the control wire, one copy output into XOR on the target wire.
/// Open legs: in-control, in-target, out-control, out-target.
pub fn feynman_gate_network() -> TensorNetwork {
    let mut net = TensorNetwork::new();
    let d = net.add_node(copy_tensor());
    let x = net.add_node(xor_tensor());
    net.bond((d, 2), (x, 1)).unwrap();
    net.set_open_legs(vec![(d, 0), (x, 2), (d, 1), (x, 0)]).unwrap();
    net
}

/// `Σ_m δ^{ij}_m ⊕^m_{qr}`: the copy tensor's third leg summed against the
/// XOR tensor's first leg. Legs `(i, j, q, r)`.
pub fn literal_cn_contraction() -> Tensor {
    copy_tensor()
        .contract_pair(&[2], &xor_tensor(), &[0])
        .expect("both tensors have rank 3")
}

/// `1 − (i + j + q + r) + ij + iq + jq + ir + jr + 2(qr − iqr − jqr)`.
pub fn cn_polynomial(i: i64, j: i64, q: i64, r: i64) -> i64 {
    1 - (i + j + q + r) + i * j + i * q + j * q + i * r + j * r + 2 * (q * r - i * q * r - j * q * r)
}

pub fn cn_polynomial_tensor() -> Tensor {
    Tensor::from_fn(4, |x| {
        let v = cn_polynomial(x[0] as i64, x[1] as i64, x[2] as i64, x[3] as i64);
        Amplitude::new(v as f64, 0.0)
    })
}
