//! Fixtures shared by the criterion benchmarks.

use stabnet::oracles::random_clifford_circuit;
use stabnet::{Circuit, Gate};

/// `H 0` followed by a CN ladder down `width` wires, input all zeros.
pub fn ghz(width: usize) -> Circuit {
    let mut c = Circuit::new(width);
    c.push(Gate::H(0)).expect("width >= 1");
    for w in 1..width {
        c.push(Gate::Cn { control: w - 1, target: w }).expect("wires in range");
    }
    c.with_input(vec![false; width]).expect("input at width")
}

/// Seeded random Clifford circuits of the cross-check sweep's shape.
pub fn random_batch(count: u64) -> Vec<Circuit> {
    (0..count).map(|s| random_clifford_circuit(s, 6, 50)).collect()
}
