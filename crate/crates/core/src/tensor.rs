//! Dense complex tensors whose legs all have dimension 2.
//!
//! A rank-*r* tensor stores 2<sup>*r*</sup> amplitudes in row-major order:
//! leg 0 is the most significant bit of the flat index and leg *r* − 1 the
//! least significant. A rank-0 tensor is a scalar.
//!
//! Tensors that act as operators on *n* wires have rank 2*n* and legs ordered
//! `(out_0, ..., out_{n-1}, in_0, ..., in_{n-1})`, so the flat data is exactly
//! the row-major 2<sup>*n*</sup> × 2<sup>*n*</sup> matrix with wire 0 as the
//! most significant qubit.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Scalar field of every tensor.
pub type Amplitude = Complex64;

/// Default tolerance for identity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("leg {leg} out of range for rank-{rank} tensor")]
    LegOutOfRange { leg: usize, rank: usize },

    #[error("leg {0} listed more than once")]
    DuplicateLeg(usize),

    #[error("contraction pairs {a} legs with {b} legs")]
    LegCountMismatch { a: usize, b: usize },

    #[error("shape mismatch: rank {a} vs rank {b}")]
    ShapeMismatch { a: usize, b: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("data length {got} does not match 2^{rank}")]
    DataLength { rank: usize, got: usize },

    #[error("non-finite amplitude at flat index {0}")]
    NonFinite(usize),

    #[error("operator tensor must have even rank, got {0}")]
    NotAnOperator(usize),
}

pub type TensorResult<T> = Result<T, TensorError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    rank: usize,
    data: Vec<Amplitude>,
}

#[inline]
fn bit(index: usize, rank: usize, leg: usize) -> usize {
    (index >> (rank - 1 - leg)) & 1
}

fn check_legs(legs: &[usize], rank: usize) -> TensorResult<()> {
    let mut seen = vec![false; rank];
    for &leg in legs {
        if leg >= rank {
            return Err(TensorError::LegOutOfRange { leg, rank });
        }
        if seen[leg] {
            return Err(TensorError::DuplicateLeg(leg));
        }
        seen[leg] = true;
    }
    Ok(())
}

impl Tensor {
    /// Builds a tensor by evaluating `f` on every index tuple in `{0,1}^rank`.
    pub fn from_fn<F>(rank: usize, f: F) -> Tensor
    where
        F: Fn(&[u8]) -> Amplitude,
    {
        let mut idx = vec![0u8; rank];
        let data = (0..1usize << rank)
            .map(|flat| {
                for (leg, slot) in idx.iter_mut().enumerate() {
                    *slot = bit(flat, rank, leg) as u8;
                }
                let value = f(&idx);
                debug_assert!(value.is_finite(), "non-finite amplitude");
                value
            })
            .collect();
        Tensor { rank, data }
    }

    pub fn from_data(rank: usize, data: Vec<Amplitude>) -> TensorResult<Tensor> {
        if data.len() != 1usize << rank {
            return Err(TensorError::DataLength { rank, got: data.len() });
        }
        if let Some(pos) = data.iter().position(|a| !a.is_finite()) {
            return Err(TensorError::NonFinite(pos));
        }
        Ok(Tensor { rank, data })
    }

    /// Convenience constructor from real entries.
    pub fn from_real(rank: usize, data: &[f64]) -> TensorResult<Tensor> {
        Tensor::from_data(rank, data.iter().map(|&x| Amplitude::new(x, 0.0)).collect())
    }

    pub fn scalar(value: Amplitude) -> Tensor {
        Tensor { rank: 0, data: vec![value] }
    }

    pub fn vector(v0: Amplitude, v1: Amplitude) -> Tensor {
        Tensor { rank: 1, data: vec![v0, v1] }
    }

    /// 2×2 matrix given row by row; legs are (row, column).
    pub fn matrix(rows: [[Amplitude; 2]; 2]) -> Tensor {
        Tensor {
            rank: 2,
            data: vec![rows[0][0], rows[0][1], rows[1][0], rows[1][1]],
        }
    }

    pub fn zeros(rank: usize) -> Tensor {
        Tensor { rank, data: vec![Amplitude::new(0.0, 0.0); 1 << rank] }
    }

    /// Computational basis state `|bits⟩`, bit 0 on leg 0.
    pub fn basis(bits: &[bool]) -> Tensor {
        let mut t = Tensor::zeros(bits.len());
        let flat = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        t.data[flat] = Amplitude::new(1.0, 0.0);
        t
    }

    /// Identity operator on `wires` wires (rank `2 * wires`).
    pub fn identity(wires: usize) -> Tensor {
        let dim = 1usize << wires;
        let mut t = Tensor::zeros(2 * wires);
        for k in 0..dim {
            t.data[k * dim + k] = Amplitude::new(1.0, 0.0);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![2; self.rank]
    }

    pub fn data(&self) -> &[Amplitude] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Amplitude> {
        self.data
    }

    /// Entry at an index tuple. Panics if the tuple has the wrong length or a
    /// component outside `{0,1}`.
    pub fn get(&self, idx: &[u8]) -> Amplitude {
        assert_eq!(idx.len(), self.rank, "index tuple length");
        let flat = idx.iter().fold(0usize, |acc, &b| {
            assert!(b < 2, "index component out of range");
            (acc << 1) | b as usize
        });
        self.data[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.norm_sqr() == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Amplitude) -> Tensor {
        Tensor {
            rank: self.rank,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn conj(&self) -> Tensor {
        Tensor {
            rank: self.rank,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    /// `‖self − other‖∞`.
    pub fn max_abs_diff(&self, other: &Tensor) -> TensorResult<f64> {
        if self.rank != other.rank {
            return Err(TensorError::ShapeMismatch { a: self.rank, b: other.rank });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Sums over `legs_a` of `self` paired with `legs_b` of `other`.
    ///
    /// The surviving legs of `self` come first in the result, followed by the
    /// surviving legs of `other`, each group in its original order. With no
    /// legs listed this is the outer product.
    pub fn contract_pair(
        &self,
        legs_a: &[usize],
        other: &Tensor,
        legs_b: &[usize],
    ) -> TensorResult<Tensor> {
        if legs_a.len() != legs_b.len() {
            return Err(TensorError::LegCountMismatch { a: legs_a.len(), b: legs_b.len() });
        }
        check_legs(legs_a, self.rank)?;
        check_legs(legs_b, other.rank)?;

        let free_a: Vec<usize> = (0..self.rank).filter(|l| !legs_a.contains(l)).collect();
        let free_b: Vec<usize> = (0..other.rank).filter(|l| !legs_b.contains(l)).collect();
        let shifts_a = |legs: &[usize]| -> Vec<usize> {
            legs.iter().map(|&l| self.rank - 1 - l).collect()
        };
        let shifts_b = |legs: &[usize]| -> Vec<usize> {
            legs.iter().map(|&l| other.rank - 1 - l).collect()
        };
        let free_a_shift = shifts_a(&free_a);
        let free_b_shift = shifts_b(&free_b);
        let sum_a_shift = shifts_a(legs_a);
        let sum_b_shift = shifts_b(legs_b);

        // Scatter a packed bit pattern onto the given bit positions.
        fn scatter(bits: usize, shifts: &[usize]) -> usize {
            let n = shifts.len();
            shifts
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &s)| acc | (((bits >> (n - 1 - k)) & 1) << s))
        }

        let n_sum = legs_a.len();
        let sum_offsets: Vec<(usize, usize)> = (0..1usize << n_sum)
            .map(|s| (scatter(s, &sum_a_shift), scatter(s, &sum_b_shift)))
            .collect();

        let rank = free_a.len() + free_b.len();
        let n_free_b = free_b.len();
        let mut data = Vec::with_capacity(1 << rank);
        for out in 0..1usize << rank {
            let base_a = scatter(out >> n_free_b, &free_a_shift);
            let base_b = scatter(out & ((1 << n_free_b) - 1), &free_b_shift);
            let value: Amplitude = sum_offsets
                .iter()
                .map(|&(oa, ob)| self.data[base_a | oa] * other.data[base_b | ob])
                .sum();
            data.push(value);
        }
        Ok(Tensor { rank, data })
    }

    pub fn outer(&self, other: &Tensor) -> Tensor {
        self.contract_pair(&[], other, &[])
            .expect("outer product has no legs to validate")
    }

    /// Sums over the diagonal of two legs of the same tensor.
    pub fn trace(&self, leg_x: usize, leg_y: usize) -> TensorResult<Tensor> {
        check_legs(&[leg_x, leg_y], self.rank)?;
        let free: Vec<usize> = (0..self.rank).filter(|&l| l != leg_x && l != leg_y).collect();
        let rank = free.len();
        let mask = (1 << (self.rank - 1 - leg_x)) | (1 << (self.rank - 1 - leg_y));
        let data = (0..1usize << rank)
            .map(|out| {
                let base = free.iter().enumerate().fold(0, |acc, (k, &l)| {
                    acc | (((out >> (rank - 1 - k)) & 1) << (self.rank - 1 - l))
                });
                self.data[base] + self.data[base | mask]
            })
            .collect();
        Ok(Tensor { rank, data })
    }

    /// Moves leg `p` of `self` to position `perm[p]` of the result.
    ///
    /// Composition: `t.permute_legs(p)?.permute_legs(q)?` equals
    /// `t.permute_legs(r)?` with `r[x] = q[p[x]]`.
    pub fn permute_legs(&self, perm: &[usize]) -> TensorResult<Tensor> {
        if perm.len() != self.rank {
            return Err(TensorError::NotAPermutation(self.rank));
        }
        check_legs(perm, self.rank).map_err(|_| TensorError::NotAPermutation(self.rank))?;
        let rank = self.rank;
        let mut data = vec![Amplitude::new(0.0, 0.0); self.data.len()];
        for (src, value) in self.data.iter().enumerate() {
            let dst = (0..rank).fold(0, |acc, leg| {
                acc | (bit(src, rank, leg) << (rank - 1 - perm[leg]))
            });
            data[dst] = *value;
        }
        Ok(Tensor { rank, data })
    }

    /// Returns `λ` with `‖self − λ·other‖∞ ≤ tol`, if one exists.
    ///
    /// `λ` is fixed by the first largest-magnitude entry of `other`. When both
    /// tensors vanish (every entry at most `tol`) the answer is `λ = 1`.
    pub fn equal_up_to_scalar(&self, other: &Tensor, tol: f64) -> TensorResult<Option<Amplitude>> {
        if self.rank != other.rank {
            return Err(TensorError::ShapeMismatch { a: self.rank, b: other.rank });
        }
        let (pivot, pivot_abs) = other
            .data
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, bv), (i, a)| {
                let v = a.norm();
                if v > bv { (i, v) } else { (bi, bv) }
            });
        if pivot_abs <= tol {
            return Ok((self.max_abs() <= tol).then_some(Amplitude::new(1.0, 0.0)));
        }
        let lambda = self.data[pivot] / other.data[pivot];
        let deviation = self.max_abs_diff(&other.scale(lambda))?;
        Ok((deviation <= tol).then_some(lambda))
    }

    fn wires(&self) -> TensorResult<usize> {
        if !self.rank.is_multiple_of(2) {
            return Err(TensorError::NotAnOperator(self.rank));
        }
        Ok(self.rank / 2)
    }

    /// Operator product `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Tensor) -> TensorResult<Tensor> {
        let n = self.wires()?;
        if other.wires()? != n {
            return Err(TensorError::ShapeMismatch { a: self.rank, b: other.rank });
        }
        let ins: Vec<usize> = (n..2 * n).collect();
        let outs: Vec<usize> = (0..n).collect();
        self.contract_pair(&ins, other, &outs)
    }

    /// Applies an operator to a state on the same number of wires.
    pub fn apply(&self, state: &Tensor) -> TensorResult<Tensor> {
        let n = self.wires()?;
        if state.rank != n {
            return Err(TensorError::ShapeMismatch { a: self.rank, b: state.rank });
        }
        let ins: Vec<usize> = (n..2 * n).collect();
        let legs: Vec<usize> = (0..n).collect();
        self.contract_pair(&ins, state, &legs)
    }

    /// Conjugate transpose of an operator.
    pub fn dagger(&self) -> TensorResult<Tensor> {
        let n = self.wires()?;
        let perm: Vec<usize> = (0..2 * n).map(|l| (l + n) % (2 * n)).collect();
        self.conj().permute_legs(&perm)
    }

    /// Tensor product of two operators, `self` on the leading wires.
    pub fn kron(&self, other: &Tensor) -> TensorResult<Tensor> {
        let n = self.wires()?;
        let m = other.wires()?;
        // outer gives (out_a, in_a, out_b, in_b); regroup to (out_a, out_b, in_a, in_b)
        let mut perm = Vec::with_capacity(2 * (n + m));
        perm.extend(0..n);
        perm.extend(n + m..2 * n + m);
        perm.extend(n..n + m);
        perm.extend(2 * n + m..2 * (n + m));
        self.outer(other).permute_legs(&perm)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(rank {})[", self.rank)?;
        for (k, a) in self.data.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, "]")
    }
}
