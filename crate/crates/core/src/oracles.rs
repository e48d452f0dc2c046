//! Independent reference simulators for checking the tensor-network engine:
//! a dense state vector and an Aaronson–Gottesman stabilizer tableau.
//!
//! Neither oracle touches the generator tensors or the network code; gates
//! are applied from their textbook definitions.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{compile, Circuit, Gate};
use crate::network::NetworkError;
use crate::tensor::Amplitude;

/// Widest circuit the dense simulator accepts.
pub const MAX_DENSE_WIDTH: usize = 12;

/// Seeds used by the random-circuit cross-check sweep.
pub const CROSSCHECK_SEEDS: std::ops::Range<u64> = 0..200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("circuit width {width} exceeds the dense limit {max}")]
    WidthExceeded { width: usize, max: usize },

    #[error("malformed Pauli string `{0}`")]
    MalformedPauli(String),

    #[error("Pauli string has {got} letters, state has {width} qubits")]
    PauliLength { got: usize, width: usize },

    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// A tensor product of single-qubit Paulis; letter `w` acts on wire `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn random(rng: &mut impl Rng, n: usize) -> Self {
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        PauliString((0..n).map(|_| letters[rng.gen_range(0..4)]).collect())
    }
}

impl FromStr for PauliString {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(OracleError::MalformedPauli(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(OracleError::MalformedPauli(s.to_string()));
        }
        Ok(PauliString(letters))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let c = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `⟨ψ|P|ψ⟩` for a Pauli string `P`.
pub trait PauliExpectation {
    fn pauli_expectation(&self, p: &PauliString) -> Result<f64, OracleError>;
}

/// Amplitudes over the computational basis, wire 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Amplitude>,
}

fn c(re: f64, im: f64) -> Amplitude {
    Amplitude::new(re, im)
}

impl StateVector {
    pub fn basis(bits: &[bool]) -> Self {
        let n = bits.len();
        let mut amplitudes = vec![c(0.0, 0.0); 1 << n];
        let k = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        amplitudes[k] = c(1.0, 0.0);
        StateVector { n, amplitudes }
    }

    pub fn from_amplitudes(n: usize, amplitudes: Vec<Amplitude>) -> Self {
        assert_eq!(amplitudes.len(), 1 << n, "amplitude count");
        StateVector { n, amplitudes }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn apply_1q(&mut self, wire: usize, m: [[Amplitude; 2]; 2]) {
        let stride = 1 << (self.n - 1 - wire);
        for k in 0..self.amplitudes.len() {
            if k & stride == 0 {
                let (a0, a1) = (self.amplitudes[k], self.amplitudes[k | stride]);
                self.amplitudes[k] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[k | stride] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_cn(&mut self, control: usize, target: usize) {
        let cb = 1 << (self.n - 1 - control);
        let tb = 1 << (self.n - 1 - target);
        for k in 0..self.amplitudes.len() {
            if k & cb != 0 && k & tb == 0 {
                self.amplitudes.swap(k, k | tb);
            }
        }
    }

    pub fn apply(&mut self, gate: Gate) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        match gate {
            Gate::H(w) => self.apply_1q(w, [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]),
            Gate::S(w) => self.apply_1q(w, [[o, z], [z, c(0.0, 1.0)]]),
            Gate::X(w) | Gate::Not(w) => self.apply_1q(w, [[z, o], [o, z]]),
            Gate::Y(w) => self.apply_1q(w, [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]),
            Gate::Z(w) => self.apply_1q(w, [[o, z], [z, -o]]),
            Gate::Cn { control, target } => self.apply_cn(control, target),
        }
    }

    fn apply_pauli(&self, p: &PauliString) -> StateVector {
        let mut out = self.clone();
        for (w, &letter) in p.0.iter().enumerate() {
            match letter {
                Pauli::I => {}
                Pauli::X => out.apply(Gate::X(w)),
                Pauli::Y => out.apply(Gate::Y(w)),
                Pauli::Z => out.apply(Gate::Z(w)),
            }
        }
        out
    }
}

impl PauliExpectation for StateVector {
    fn pauli_expectation(&self, p: &PauliString) -> Result<f64, OracleError> {
        if p.len() != self.n {
            return Err(OracleError::PauliLength { got: p.len(), width: self.n });
        }
        let moved = self.apply_pauli(p);
        let ip: Amplitude = self
            .amplitudes
            .iter()
            .zip(&moved.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(ip.re)
    }
}

/// Applies each gate's textbook matrix to the circuit's input (zeros if
/// none was given).
pub fn dense_simulate(circuit: &Circuit) -> Result<StateVector, OracleError> {
    if circuit.width() > MAX_DENSE_WIDTH {
        return Err(OracleError::WidthExceeded { width: circuit.width(), max: MAX_DENSE_WIDTH });
    }
    let mut state = StateVector::basis(&circuit.input_or_zeros());
    for &g in circuit.ops() {
        state.apply(g);
    }
    Ok(state)
}

/// Destabilizer rows `0..n`, stabilizer rows `n..2n`. A row with bits
/// `(x, z)` and sign `r` stands for `(−1)^r ⊗_j σ(x_j, z_j)` with
/// `σ(1, 1) = Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    x: Vec<Vec<bool>>,
    z: Vec<Vec<bool>>,
    r: Vec<bool>,
}

/// Exponent `e` with `σ(x1,z1) σ(x2,z2) = i^e σ(x1⊕x2, z1⊕z2)`.
fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2i, z2i) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2i - x2i,
        (true, false) => z2i * (2 * x2i - 1),
        (false, true) => x2i * (1 - 2 * z2i),
    }
}

impl StabilizerTableau {
    /// The state `|0…0⟩`: destabilizers `X_j`, stabilizers `Z_j`.
    pub fn new(n: usize) -> Self {
        let mut x = vec![vec![false; n]; 2 * n];
        let mut z = vec![vec![false; n]; 2 * n];
        for j in 0..n {
            x[j][j] = true;
            z[n + j][j] = true;
        }
        StabilizerTableau { n, x, z, r: vec![false; 2 * n] }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn apply(&mut self, gate: Gate) {
        for row in 0..2 * self.n {
            let (x, z, r) = (&mut self.x[row], &mut self.z[row], &mut self.r[row]);
            match gate {
                Gate::H(a) => {
                    *r ^= x[a] & z[a];
                    std::mem::swap(&mut x[a], &mut z[a]);
                }
                Gate::S(a) => {
                    *r ^= x[a] & z[a];
                    z[a] ^= x[a];
                }
                Gate::X(a) | Gate::Not(a) => *r ^= z[a],
                Gate::Z(a) => *r ^= x[a],
                Gate::Y(a) => *r ^= x[a] ^ z[a],
                Gate::Cn { control: a, target: b } => {
                    *r ^= x[a] & z[b] & !(x[b] ^ z[a]);
                    x[b] ^= x[a];
                    z[a] ^= z[b];
                }
            }
        }
    }

    fn anticommutes(&self, row: usize, px: &[bool], pz: &[bool]) -> bool {
        (0..self.n).fold(false, |acc, j| {
            acc ^ (self.x[row][j] & pz[j]) ^ (self.z[row][j] & px[j])
        })
    }

    /// The stabilizer generators with their signs (`true` = negative).
    pub fn stabilizers(&self) -> Vec<(bool, PauliString)> {
        (self.n..2 * self.n).map(|row| (self.r[row], self.row_string(row))).collect()
    }

    pub fn destabilizers(&self) -> Vec<(bool, PauliString)> {
        (0..self.n).map(|row| (self.r[row], self.row_string(row))).collect()
    }

    fn row_string(&self, row: usize) -> PauliString {
        PauliString((0..self.n).map(|j| Pauli::from_bits(self.x[row][j], self.z[row][j])).collect())
    }

    /// True when the `2n` rows are linearly independent over GF(2).
    pub fn is_full_rank(&self) -> bool {
        let mut rows: Vec<Vec<bool>> = (0..2 * self.n)
            .map(|i| self.x[i].iter().chain(&self.z[i]).copied().collect())
            .collect();
        let mut rank = 0;
        for col in 0..2 * self.n {
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col]) else {
                continue;
            };
            rows.swap(rank, pivot);
            for i in 0..rows.len() {
                if i != rank && rows[i][col] {
                    let (head, tail) = rows.split_at_mut(i.max(rank));
                    let (dst, src) = if i > rank {
                        (&mut tail[0], &head[rank])
                    } else {
                        (&mut head[i], &tail[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= *s;
                    }
                }
            }
            rank += 1;
        }
        rank == 2 * self.n
    }
}

impl PauliExpectation for StabilizerTableau {
    /// `±1` when `±P` is in the stabilizer group, `0` otherwise.
    fn pauli_expectation(&self, p: &PauliString) -> Result<f64, OracleError> {
        if p.len() != self.n {
            return Err(OracleError::PauliLength { got: p.len(), width: self.n });
        }
        let (px, pz): (Vec<bool>, Vec<bool>) = p.0.iter().map(|l| l.bits()).unzip();
        if (self.n..2 * self.n).any(|row| self.anticommutes(row, &px, &pz)) {
            return Ok(0.0);
        }
        // P is ± the product of the stabilizers paired with the destabilizers
        // it anticommutes with.
        let mut x = vec![false; self.n];
        let mut z = vec![false; self.n];
        let mut phase = 0i32;
        for i in 0..self.n {
            if !self.anticommutes(i, &px, &pz) {
                continue;
            }
            let row = self.n + i;
            phase += 2 * self.r[row] as i32;
            for j in 0..self.n {
                phase += phase_exponent(self.x[row][j], self.z[row][j], x[j], z[j]);
                x[j] ^= self.x[row][j];
                z[j] ^= self.z[row][j];
            }
        }
        debug_assert_eq!((x, z), (px, pz), "product must reproduce P");
        match phase.rem_euclid(4) {
            0 => Ok(1.0),
            2 => Ok(-1.0),
            other => unreachable!("Hermitian product has phase i^{other}"),
        }
    }
}

/// Standard tableau updates from `|0…0⟩`, preceded by X on every wire whose
/// input bit is 1.
pub fn tableau_simulate(circuit: &Circuit) -> StabilizerTableau {
    let mut t = StabilizerTableau::new(circuit.width());
    for (w, &bit) in circuit.input_or_zeros().iter().enumerate() {
        if bit {
            t.apply(Gate::X(w));
        }
    }
    for &g in circuit.ops() {
        t.apply(g);
    }
    t
}

/// A random Clifford circuit: width in `1..=max_width`, depth in
/// `1..=max_depth`, gate type uniform over {H, S, X, Y, Z, CN} (CN only on two
/// or more wires) and then wires uniform, random basis input.
pub fn random_clifford_circuit(seed: u64, max_width: usize, max_depth: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = rng.gen_range(1..=max_width);
    let depth = rng.gen_range(1..=max_depth);
    let kinds = if width >= 2 { 6 } else { 5 };
    let mut circuit = Circuit::new(width);
    for _ in 0..depth {
        let w = rng.gen_range(0..width);
        let gate = match rng.gen_range(0..kinds) {
            0 => Gate::H(w),
            1 => Gate::S(w),
            2 => Gate::X(w),
            3 => Gate::Y(w),
            4 => Gate::Z(w),
            _ => {
                let mut target = rng.gen_range(0..width - 1);
                if target >= w {
                    target += 1;
                }
                Gate::Cn { control: w, target }
            }
        };
        circuit.push(gate).expect("wires drawn in range");
    }
    let input = (0..width).map(|_| rng.gen_bool(0.5)).collect();
    circuit.set_input(input).expect("input drawn at circuit width");
    circuit
}

/// Agreement between the contracted network, the dense oracle, and the
/// tableau oracle on one circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct Crosscheck {
    /// `‖ψ_tn − λ ψ_dense‖∞`, `λ` fixed by the first nonzero dense amplitude.
    pub amplitude_deviation: f64,
    /// `|λ|`; 1 when the network carries no stray normalization.
    pub scalar_magnitude: f64,
    /// Largest gap between tableau expectations and either state's.
    pub expectation_deviation: f64,
    pub paulis_checked: usize,
}

impl Crosscheck {
    pub fn agrees(&self, tol: f64) -> bool {
        self.amplitude_deviation <= tol && self.expectation_deviation <= tol
    }
}

/// Contracts the compiled circuit and compares it with both oracles. The
/// Pauli strings checked are the tableau's stabilizer generators, all
/// single-qubit Paulis, and `random_paulis` strings drawn from `seed`.
pub fn crosscheck(circuit: &Circuit, seed: u64, random_paulis: usize) -> Result<Crosscheck, OracleError> {
    let mut fixed = circuit.clone();
    if fixed.input().is_none() {
        fixed.set_input(vec![false; circuit.width()]).expect("width matches");
    }
    let n = fixed.width();
    let dense = dense_simulate(&fixed)?;
    let tn = compile(&fixed).contract()?;
    let tn = StateVector::from_amplitudes(n, tn.into_data());

    let pivot = dense
        .amplitudes
        .iter()
        .position(|a| a.norm() > 1e-6)
        .expect("normalized state has a nonzero amplitude");
    let lambda = tn.amplitudes[pivot] / dense.amplitudes[pivot];
    let amplitude_deviation = tn
        .amplitudes
        .iter()
        .zip(&dense.amplitudes)
        .map(|(t, d)| (t - lambda * d).norm())
        .fold(0.0, f64::max);
    let scalar_magnitude = lambda.norm();
    let tn_normalized = StateVector::from_amplitudes(
        n,
        tn.amplitudes.iter().map(|a| a / scalar_magnitude).collect(),
    );

    let tableau = tableau_simulate(&fixed);
    let mut paulis: Vec<PauliString> = tableau.stabilizers().into_iter().map(|(_, p)| p).collect();
    for w in 0..n {
        for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
            let mut s = vec![Pauli::I; n];
            s[w] = letter;
            paulis.push(PauliString(s));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    paulis.extend((0..random_paulis).map(|_| PauliString::random(&mut rng, n)));

    let mut expectation_deviation: f64 = 0.0;
    for p in &paulis {
        let t = tableau.pauli_expectation(p)?;
        let d = dense.pauli_expectation(p)?;
        let v = tn_normalized.pauli_expectation(p)?;
        expectation_deviation = expectation_deviation.max((t - d).abs()).max((t - v).abs());
    }
    Ok(Crosscheck {
        amplitude_deviation,
        scalar_magnitude,
        expectation_deviation,
        paulis_checked: paulis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit(width: usize, gates: &[Gate], input: &[bool]) -> Circuit {
        Circuit::new(width)
            .with_gates(gates.iter().copied())
            .unwrap()
            .with_input(input.to_vec())
            .unwrap()
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn bell() -> Circuit {
        circuit(2, &[Gate::H(0), Gate::Cn { control: 0, target: 1 }], &[false, false])
    }

    #[test]
    fn dense_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = dense_simulate(&circuit(1, &[Gate::H(0)], &[false])).unwrap();
        assert!((v.amplitudes()[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((v.amplitudes()[1] - c(s, 0.0)).norm() < 1e-15);

        let v = dense_simulate(&circuit(2, &[Gate::Cn { control: 0, target: 1 }], &[true, false])).unwrap();
        assert_eq!(v, StateVector::basis(&[true, true]));

        let v = dense_simulate(&circuit(3, &[], &[true, false, true])).unwrap();
        assert_eq!(v, StateVector::basis(&[true, false, true]));

        let wide = Circuit::new(13);
        assert_eq!(dense_simulate(&wide), Err(OracleError::WidthExceeded { width: 13, max: 12 }));
    }

    #[test]
    fn dense_expectations() {
        let zero = dense_simulate(&circuit(1, &[], &[false])).unwrap();
        assert_eq!(zero.pauli_expectation(&ps("Z")).unwrap(), 1.0);
        let b = dense_simulate(&bell()).unwrap();
        assert!((b.pauli_expectation(&ps("XX")).unwrap() - 1.0).abs() < 1e-12);
        assert!(b.pauli_expectation(&ps("ZI")).unwrap().abs() < 1e-12);
        assert!((b.pauli_expectation(&ps("YY")).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(
            b.pauli_expectation(&ps("X")),
            Err(OracleError::PauliLength { got: 1, width: 2 })
        );
    }

    #[test]
    fn pauli_string_parsing() {
        assert_eq!(ps("XIZY").to_string(), "XIZY");
        assert!(matches!("XQ".parse::<PauliString>(), Err(OracleError::MalformedPauli(_))));
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn tableau_examples() {
        let t = tableau_simulate(&circuit(1, &[Gate::H(0)], &[false]));
        assert_eq!(t.stabilizers(), vec![(false, ps("X"))]);

        let t = tableau_simulate(&bell());
        assert_eq!(t.stabilizers(), vec![(false, ps("XX")), (false, ps("ZZ"))]);
        assert_eq!(t.pauli_expectation(&ps("XX")).unwrap(), 1.0);
        assert_eq!(t.pauli_expectation(&ps("YY")).unwrap(), -1.0);
        assert_eq!(t.pauli_expectation(&ps("ZI")).unwrap(), 0.0);

        let ss = tableau_simulate(&circuit(1, &[Gate::S(0), Gate::S(0)], &[false]));
        let z = tableau_simulate(&circuit(1, &[Gate::Z(0)], &[false]));
        assert_eq!(ss, z);
        assert!(ss.is_full_rank());
    }

    #[test]
    fn tableau_signs_from_input() {
        let t = tableau_simulate(&circuit(2, &[], &[true, false]));
        assert_eq!(t.pauli_expectation(&ps("ZI")).unwrap(), -1.0);
        assert_eq!(t.pauli_expectation(&ps("IZ")).unwrap(), 1.0);
        assert_eq!(t.pauli_expectation(&ps("ZZ")).unwrap(), -1.0);
        // S|+⟩ = |+i⟩ is stabilized by Y
        let t = tableau_simulate(&circuit(1, &[Gate::H(0), Gate::S(0)], &[false]));
        assert_eq!(t.pauli_expectation(&ps("Y")).unwrap(), 1.0);
    }

    #[test]
    fn phase_exponent_table() {
        // XZ = −iY, ZX = iY, XY = iZ
        assert_eq!(phase_exponent(true, false, false, true), -1);
        assert_eq!(phase_exponent(false, true, true, false), 1);
        assert_eq!(phase_exponent(true, false, true, true), 1);
    }

    #[test]
    fn random_circuits_are_reproducible() {
        let a = random_clifford_circuit(7, 6, 50);
        assert_eq!(a, random_clifford_circuit(7, 6, 50));
        assert!(a.width() <= 6 && a.ops().len() <= 50 && !a.ops().is_empty());
        assert!(a.input().is_some());
    }

    #[test]
    fn tableau_stays_full_rank_and_dense_stays_normalized() {
        for seed in 0..30 {
            let circ = random_clifford_circuit(seed, 6, 50);
            let mut t = StabilizerTableau::new(circ.width());
            let mut v = StateVector::basis(&circ.input_or_zeros());
            for &g in circ.ops() {
                t.apply(g);
                v.apply(g);
                assert!(t.is_full_rank());
                assert!((v.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn crosscheck_bell() {
        let r = crosscheck(&bell(), 1, 8).unwrap();
        assert!(r.agrees(1e-9), "{r:?}");
        assert!((r.scalar_magnitude - 1.0).abs() < 1e-12);
        assert_eq!(r.paulis_checked, 2 + 6 + 8);
    }
}
