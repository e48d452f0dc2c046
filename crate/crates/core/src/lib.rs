//! Tensor networks for stabilizer circuits built from five primitive
//! generators: the copy tensor, the XOR tensor, the Hadamard gate, the phase
//! vectors `|t^k⟩ = |0⟩ + i^k|1⟩`, and the covector `⟨+| = ⟨0| + ⟨1|`.
//!
//! * [`tensor`] and [`network`]: dense qubit-leg tensors and their contraction.
//! * [`generators`]: the primitives and the gates recovered from them.
//! * [`circuit`]: gate lists, their text format, and compilation to networks.
//! * [`verify`]: bialgebra/Hopf relations and the Clifford recovery chain.
//! * [`logic`]: entropy-based reversibility and linear Boolean functions.
//! * [`oracles`]: dense and tableau simulators used to cross-check contraction.

pub mod circuit;
pub mod generators;
pub mod logic;
pub mod network;
pub mod oracles;
pub mod report;
pub mod tensor;
pub mod verify;

pub use circuit::{compile, feynman_gate_network, literal_cn_contraction, Circuit, CircuitError, Gate};
pub use generators::{GeneratorId, GeneratorSet};
pub use logic::{delta_entropy, delta_entropy_distinct, is_reversible, BooleanLinearForm, LogicError, TruthTable};
pub use network::{LegBinding, NetworkError, NodeId, TensorNetwork};
pub use oracles::{OracleError, PauliExpectation, PauliString, StabilizerTableau, StateVector};
pub use report::{Expectation, RelationReport, Status};
pub use tensor::{Amplitude, Tensor, TensorError, DEFAULT_TOL};
