//! Reversibility of `n`-bit maps via an entropy functional, and the
//! correspondence between linear Boolean functions and Hadamard columns.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::report::{RelationReport, Status};
use crate::tensor::{Amplitude, Tensor};

/// Largest table width accepted by the parser.
pub const MAX_TABLE_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("expected {expected} output rows, got {got}")]
    RowCount { expected: usize, got: usize },

    #[error("output {value} at row {row} does not fit in {n} bits")]
    OutputOutOfRange { row: usize, value: u32, n: usize },

    #[error("table width {0} outside 1..={MAX_TABLE_BITS}")]
    WidthOutOfRange(usize),

    #[error("input has {got} bits, form has {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("n = {0} outside the supported range 1..=6")]
    OrderOutOfRange(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A total map on `n`-bit strings. `outputs[i]` is the image of the `i`-th
/// input in lexicographic order, so input `00…0` comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    outputs: Vec<u32>,
}

impl TruthTable {
    pub fn new(n: usize, outputs: Vec<u32>) -> Result<Self, LogicError> {
        if n == 0 || n > MAX_TABLE_BITS {
            return Err(LogicError::WidthOutOfRange(n));
        }
        let rows = 1usize << n;
        if outputs.len() != rows {
            return Err(LogicError::RowCount { expected: rows, got: outputs.len() });
        }
        if let Some((row, &value)) = outputs.iter().enumerate().find(|(_, &v)| v as usize >= rows) {
            return Err(LogicError::OutputOutOfRange { row, value, n });
        }
        Ok(TruthTable { n, outputs })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self, LogicError> {
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    pub fn identity(n: usize) -> Result<Self, LogicError> {
        Self::from_fn(n, |x| x)
    }

    pub fn bits(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    /// Number of inputs mapped to each output value (zero counts included).
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.outputs.len()];
        for &o in &self.outputs {
            counts[o as usize] += 1;
        }
        counts
    }

    /// `k ↦ number of output values with exactly k preimages`.
    pub fn preimage_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for c in self.preimage_counts() {
            *hist.entry(c).or_default() += 1;
        }
        hist
    }
}

impl FromStr for TruthTable {
    type Err = LogicError;

    /// Header `bits n`, then `2^n` lines `input_bits output_bits` in strict
    /// lexicographic input order. Blank lines and `#` comments are skipped.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut n: Option<usize> = None;
        let mut outputs = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let err = |message: String| LogicError::Parse { line, message };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some(width) = n else {
                match tokens.as_slice() {
                    ["bits", w] => {
                        let w: usize = w.parse().map_err(|_| err(format!("bad width `{w}`")))?;
                        if w == 0 || w > MAX_TABLE_BITS {
                            return Err(err(LogicError::WidthOutOfRange(w).to_string()));
                        }
                        n = Some(w);
                        continue;
                    }
                    _ => return Err(err("expected `bits n` header".into())),
                }
            };
            let [input, output] = tokens.as_slice() else {
                return Err(err("expected `input_bits output_bits`".into()));
            };
            let parse = |s: &str| -> Result<u32, LogicError> {
                if s.len() != width || !s.chars().all(|c| c == '0' || c == '1') {
                    return Err(err(format!("`{s}` is not a {width}-bit string")));
                }
                Ok(u32::from_str_radix(s, 2).expect("validated binary"))
            };
            let (i, o) = (parse(input)?, parse(output)?);
            if i as usize != outputs.len() {
                return Err(err(format!(
                    "input {input} out of lexicographic order (expected row {})",
                    outputs.len()
                )));
            }
            outputs.push(o);
        }
        let n = n.ok_or(LogicError::Parse { line: last_line, message: "missing `bits n` header".into() })?;
        TruthTable::new(n, outputs)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bits {}", self.n)?;
        for (i, o) in self.outputs.iter().enumerate() {
            writeln!(f, "{:0w$b} {:0w$b}", i, o, w = self.n)?;
        }
        Ok(())
    }
}

/// The entropy change as a literal sum over inputs:
///
/// `ΔS = Σ_i P{g(y_i)} log₂ P{g(y_i)} − Σ_i P(y_i) log₂ P(y_i)`
///
/// where `P{g(y_i)}` is the push-forward mass of `g(y_i)` (its preimage count
/// times `2^{-n}`), so each output value is counted once per preimage. The
/// second term is `−n`. The sign is as written, without the conventional
/// minus on Shannon entropy.
///
/// This reading is zero on permutations, but it is also zero on many
/// non-injective maps, e.g. a 2-bit map with two outputs hit twice each; see
/// [`delta_entropy_distinct`] for the entropy difference that vanishes
/// exactly on permutations.
pub fn delta_entropy(t: &TruthTable) -> f64 {
    let total = t.outputs.len() as f64;
    let counts = t.preimage_counts();
    let output_term: f64 = t
        .outputs
        .iter()
        .map(|&o| {
            let p = counts[o as usize] as f64 / total;
            p * p.log2()
        })
        .sum();
    let input_term = -(t.n as f64);
    output_term - input_term
}

/// `n − H(output)`: the Shannon-entropy drop under the push-forward of the
/// uniform distribution, with `0·log 0 = 0`. Nonnegative, and zero exactly
/// on permutations.
pub fn delta_entropy_distinct(t: &TruthTable) -> f64 {
    let total = t.outputs.len() as f64;
    let output_term: f64 = t
        .preimage_counts()
        .into_iter()
        .filter(|&m| m > 0)
        .map(|m| {
            let p = m as f64 / total;
            p * p.log2()
        })
        .sum();
    output_term + t.n as f64
}

/// True iff the outputs are a permutation of all `n`-bit strings.
pub fn is_reversible(t: &TruthTable) -> bool {
    t.preimage_counts().iter().all(|&c| c == 1)
}

/// `f(x) = c₀ ⊕ c₁x₁ ⊕ … ⊕ cₙxₙ`. With `affine = false` the form is linear.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanLinearForm {
    pub coeffs: Vec<bool>,
    pub affine: bool,
}

impl BooleanLinearForm {
    pub fn linear(coeffs: Vec<bool>) -> Self {
        BooleanLinearForm { coeffs, affine: false }
    }

    /// The linear form whose coefficient bits spell `c` with `x₁` as the most
    /// significant of `n` bits.
    pub fn from_index(n: usize, c: usize) -> Self {
        Self::linear((0..n).map(|k| (c >> (n - 1 - k)) & 1 == 1).collect())
    }

    pub fn negated(mut self) -> Self {
        self.affine = !self.affine;
        self
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

pub fn eval_linear(form: &BooleanLinearForm, x: &[bool]) -> Result<bool, LogicError> {
    if x.len() != form.coeffs.len() {
        return Err(LogicError::LengthMismatch { expected: form.coeffs.len(), got: x.len() });
    }
    let parity = form.coeffs.iter().zip(x).filter(|(&c, &b)| c && b).count() % 2 == 1;
    Ok(form.affine ^ parity)
}

/// `(−1)^{f(x)}` as a rank-`n` tensor, `x₁` on leg 0.
pub fn polarity_vector(form: &BooleanLinearForm) -> Tensor {
    Tensor::from_fn(form.len(), |idx| {
        let x: Vec<bool> = idx.iter().map(|&b| b == 1).collect();
        let f = eval_linear(form, &x).expect("index length equals form length");
        Amplitude::new(if f { -1.0 } else { 1.0 }, 0.0)
    })
}

/// `H^{⊗n}` as an operator built from the single-wire Hadamard.
fn hadamard_power(h: &Tensor, n: usize) -> Tensor {
    (1..n).fold(h.clone(), |acc, _| acc.kron(h).expect("operators"))
}

/// Checks that column `c` of `H^{⊗n}` is `2^{-n/2}` times the polarity vector
/// of the linear form with coefficients `c`, for every `c`, and that the
/// `2^n` forms are distinct functions.
pub fn verify_hadamard_column_indexing(h: &Tensor, n: usize, tol: f64) -> Result<RelationReport, LogicError> {
    if !(1..=6).contains(&n) {
        return Err(LogicError::OrderOutOfRange(n));
    }
    let hn = hadamard_power(h, n);
    let dim = 1usize << n;
    let scale = Amplitude::new(2f64.powf(-(n as f64) / 2.0), 0.0);

    let mut deviation: f64 = 0.0;
    let mut functions: HashSet<Vec<bool>> = HashSet::new();
    for c in 0..dim {
        let form = BooleanLinearForm::from_index(n, c);
        let column: Vec<Amplitude> = (0..dim).map(|x| hn.data()[x * dim + c]).collect();
        let column = Tensor::from_data(n, column).expect("2^n entries");
        let polarity = polarity_vector(&form);
        deviation = deviation.max(column.max_abs_diff(&polarity.scale(scale)).expect("same rank"));
        functions.insert(polarity.data().iter().map(|a| a.re < 0.0).collect());
    }

    let distinct = functions.len();
    let status = if deviation <= tol && distinct == dim { Status::ExactHold } else { Status::Fails };
    Ok(RelationReport {
        id: format!("hadamard-columns-n{n}"),
        status,
        max_deviation: deviation,
        lhs: format!("columns of H^⊗{n}"),
        rhs: format!("2^(-{n}/2) (-1)^(c·x)"),
        expectation: crate::report::Expectation::Holds,
        note: Some(format!("{distinct} distinct linear functions (2^{n} = {dim})")),
    })
}
