//! The primitive generators (copy, XOR, Hadamard, `|t^k⟩`, `⟨+|`) and the
//! gates recovered from them.
//!
//! Vectors are kept unnormalized, exactly as written: `|t^k⟩ = |0⟩ + i^k|1⟩`,
//! `⟨+| = ⟨0| + ⟨1|`, cup `= Σ|aa⟩`. The Hadamard gate uses the unitary
//! normalization `H_ij = (−1)^{i·j} / √2`.
//!
//! Leg conventions:
//! * copy `δ` has legs `(i, j, k)` and is nonzero only where `i = j = k`; as a
//!   map, `i` is the input and `j, k` the outputs.
//! * XOR `⊕` has legs `(q, r, s)` and is nonzero only where `q = r ⊕ s`; as a
//!   map, `q` is the output and `r, s` the inputs.
//! * rank-2 operators have legs `(out, in)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::network::TensorNetwork;
use crate::tensor::{Amplitude, Tensor};

const ASSERT_TOL: f64 = 1e-12;

fn re(x: f64) -> Amplitude {
    Amplitude::new(x, 0.0)
}

/// `i^k`, computed from the quadrant `k mod 4` without trigonometry.
pub fn i_pow(k: i64) -> Amplitude {
    match k.rem_euclid(4) {
        0 => Amplitude::new(1.0, 0.0),
        1 => Amplitude::new(0.0, 1.0),
        2 => Amplitude::new(-1.0, 0.0),
        _ => Amplitude::new(0.0, -1.0),
    }
}

/// Names of the primitive tensors and the constants built alongside them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    Copy,
    Xor,
    Hadamard,
    /// `|t^k⟩`, with `k` reduced mod 4.
    TVector(u8),
    PlusCovector,
    KetZero,
    KetOne,
    Cup,
    Cap,
}

impl GeneratorId {
    pub fn t_vector(k: i64) -> Self {
        GeneratorId::TVector(k.rem_euclid(4) as u8)
    }

    pub fn tensor(self) -> Tensor {
        match self {
            GeneratorId::Copy => copy_tensor(),
            GeneratorId::Xor => xor_tensor(),
            GeneratorId::Hadamard => hadamard(),
            GeneratorId::TVector(k) => t_vector(k as i64),
            GeneratorId::PlusCovector => plus_covector(),
            GeneratorId::KetZero => ket_zero(),
            GeneratorId::KetOne => ket_one(),
            GeneratorId::Cup => cup(),
            GeneratorId::Cap => cap(),
        }
    }
}

/// `δ^i_jk = 1 − (i + j + k) + ij + ik + jk`.
pub fn copy_tensor() -> Tensor {
    Tensor::from_fn(3, |x| {
        let (i, j, k) = (x[0] as i64, x[1] as i64, x[2] as i64);
        re((1 - (i + j + k) + i * j + i * k + j * k) as f64)
    })
}

/// `⊕^q_rs = 1 − (q + r + s) + 2(qr + qs + rs) − 4qrs`.
pub fn xor_tensor() -> Tensor {
    Tensor::from_fn(3, |x| {
        let (q, r, s) = (x[0] as i64, x[1] as i64, x[2] as i64);
        re((1 - (q + r + s) + 2 * (q * r + q * s + r * s) - 4 * q * r * s) as f64)
    })
}

pub fn hadamard() -> Tensor {
    Tensor::from_fn(2, |x| {
        let sign = if x[0] & x[1] == 1 { -1.0 } else { 1.0 };
        re(sign * FRAC_1_SQRT_2)
    })
}

/// `|t^k⟩ = |0⟩ + i^k |1⟩`, unnormalized.
pub fn t_vector(k: i64) -> Tensor {
    Tensor::vector(re(1.0), i_pow(k))
}

/// `⟨+| = ⟨0| + ⟨1|`; the caller decides which legs it is contracted against.
pub fn plus_covector() -> Tensor {
    Tensor::vector(re(1.0), re(1.0))
}

pub fn ket_zero() -> Tensor {
    Tensor::vector(re(1.0), re(0.0))
}

pub fn ket_one() -> Tensor {
    Tensor::vector(re(0.0), re(1.0))
}

/// `Σ_a |aa⟩`, obtained by feeding `(1, 1)` into the copy tensor's input.
pub fn cup() -> Tensor {
    let built = copy_tensor()
        .contract_pair(&[0], &t_vector(0), &[0])
        .expect("copy has an input leg");
    let direct = Tensor::from_fn(2, |x| re((x[0] == x[1]) as u8 as f64));
    assert_eq!(built, direct, "cup from copy disagrees with Σ|aa⟩");
    built
}

/// `Σ_a ⟨aa|`. Same entries as [`cup`]; only its role differs.
pub fn cap() -> Tensor {
    cup()
}

/// Swap of two wires as an operator with legs `(out0, out1, in0, in1)`.
pub fn swap() -> Tensor {
    Tensor::from_fn(4, |x| re((x[0] == x[3] && x[1] == x[2]) as u8 as f64))
}

/// Elementwise product `(u ⊙ v)_a = u_a v_a`, computed by feeding `u` and `v`
/// into the two output legs of the copy tensor.
///
/// Panics if either argument is not a vector.
pub fn pointwise_product(u: &Tensor, v: &Tensor) -> Tensor {
    assert!(u.rank() == 1 && v.rank() == 1, "pointwise product needs vectors");
    let mut net = TensorNetwork::new();
    let d = net.add_node(copy_tensor());
    let nu = net.add_node(u.clone());
    let nv = net.add_node(v.clone());
    net.bond((d, 1), (nu, 0)).unwrap();
    net.bond((d, 2), (nv, 0)).unwrap();
    net.open((d, 0)).unwrap();
    let built = net.contract().expect("well-formed product network");

    let direct = Tensor::vector(u.data()[0] * v.data()[0], u.data()[1] * v.data()[1]);
    assert!(
        built.max_abs_diff(&direct).unwrap() <= ASSERT_TOL,
        "copy-induced product disagrees with elementwise product"
    );
    built
}

/// `diag(v_0, v_1)`, obtained by feeding `v` into one leg of the copy tensor.
///
/// Panics if `v` is not a vector.
pub fn lift_diagonal(v: &Tensor) -> Tensor {
    assert_eq!(v.rank(), 1, "diagonal lift needs a vector");
    let built = copy_tensor()
        .contract_pair(&[2], v, &[0])
        .expect("copy has three legs");
    let direct = Tensor::matrix([
        [v.data()[0], re(0.0)],
        [re(0.0), v.data()[1]],
    ]);
    assert!(
        built.max_abs_diff(&direct).unwrap() <= ASSERT_TOL,
        "copy-induced lift disagrees with diagonal construction"
    );
    built
}

/// `S = lift(|t¹⟩) = |0⟩⟨0| + i|1⟩⟨1|`.
pub fn phase_s() -> Tensor {
    lift_diagonal(&t_vector(1))
}

fn textbook(rows: [[Amplitude; 2]; 2], built: Tensor, name: &str) -> Tensor {
    let expect = Tensor::matrix(rows);
    assert!(
        built.max_abs_diff(&expect).unwrap() <= ASSERT_TOL,
        "{name} from generators disagrees with the textbook matrix"
    );
    built
}

/// `Z = lift(|t²⟩)`.
pub fn pauli_z() -> Tensor {
    let z = lift_diagonal(&t_vector(2));
    textbook([[re(1.0), re(0.0)], [re(0.0), re(-1.0)]], z, "Z")
}

/// `X = H Z H`.
pub fn pauli_x() -> Tensor {
    let h = hadamard();
    let x = h.compose(&pauli_z()).and_then(|hz| hz.compose(&h)).unwrap();
    textbook([[re(0.0), re(1.0)], [re(1.0), re(0.0)]], x, "X")
}

/// `Y = S X S³`.
pub fn pauli_y() -> Tensor {
    let s = phase_s();
    let s3 = s.compose(&s).and_then(|s2| s2.compose(&s)).unwrap();
    let y = s.compose(&pauli_x()).and_then(|sx| sx.compose(&s3)).unwrap();
    textbook([[re(0.0), -i_pow(1)], [i_pow(1), re(0.0)]], y, "Y")
}

/// NOT, obtained by feeding the constant `|1⟩` into one input of XOR.
pub fn not_from_constant() -> Tensor {
    let not = xor_tensor()
        .contract_pair(&[1], &ket_one(), &[0])
        .expect("xor has three legs");
    textbook([[re(0.0), re(1.0)], [re(1.0), re(0.0)]], not, "NOT")
}

/// A generator set that verification routines draw from. Individual entries
/// can be corrupted to check that the verifier notices.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub copy: Tensor,
    pub xor: Tensor,
    pub hadamard: Tensor,
    /// `|t⟩ = |t¹⟩`; the rest of the family is recovered from it.
    pub t: Tensor,
    pub plus: Tensor,
    pub ket_zero: Tensor,
    pub ket_one: Tensor,
}

impl Default for GeneratorSet {
    fn default() -> Self {
        Self::standard()
    }
}

impl GeneratorSet {
    pub fn standard() -> Self {
        GeneratorSet {
            copy: copy_tensor(),
            xor: xor_tensor(),
            hadamard: hadamard(),
            t: t_vector(1),
            plus: plus_covector(),
            ket_zero: ket_zero(),
            ket_one: ket_one(),
        }
    }

    /// Flips the copy entry at `flat` between 0 and 1.
    pub fn with_copy_entry_flipped(mut self, flat: usize) -> Self {
        let mut data = self.copy.into_data();
        let slot = &mut data[flat % 8];
        *slot = if slot.norm() > 0.5 { re(0.0) } else { re(1.0) };
        self.copy = Tensor::from_data(3, data).expect("rank-3 data");
        self
    }

    /// `|t^k⟩` built from `|t⟩` by repeated copy-induced products, starting
    /// from `|t⁰⟩ = (1, 1)`, the unit of the product.
    pub fn t_power(&self, k: i64) -> Tensor {
        let mut acc = self.plus.clone();
        for _ in 0..k.rem_euclid(4) {
            acc = self.product(&acc, &self.t);
        }
        acc
    }

    pub fn product(&self, u: &Tensor, v: &Tensor) -> Tensor {
        let mut net = TensorNetwork::new();
        let d = net.add_node(self.copy.clone());
        let nu = net.add_node(u.clone());
        let nv = net.add_node(v.clone());
        net.bond((d, 1), (nu, 0)).unwrap();
        net.bond((d, 2), (nv, 0)).unwrap();
        net.open((d, 0)).unwrap();
        net.contract().expect("well-formed product network")
    }

    pub fn lift(&self, v: &Tensor) -> Tensor {
        self.copy.contract_pair(&[2], v, &[0]).expect("copy has three legs")
    }
}
