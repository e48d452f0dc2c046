use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabnet::logic::{delta_entropy, delta_entropy_distinct, is_reversible, TruthTable};
use stabnet::oracles::{dense_simulate, random_clifford_circuit};
use stabnet::{compile, Amplitude, Circuit, Gate, Tensor};

fn amplitude() -> impl Strategy<Value = Amplitude> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Amplitude::new(re, im))
}

fn tensor(rank: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec(amplitude(), 1 << rank).prop_map(move |d| Tensor::from_data(rank, d).unwrap())
}

fn permutation(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..rank).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn contraction_is_bilinear(
        a in tensor(3), a2 in tensor(3), b in tensor(2),
        alpha in amplitude(), beta in amplitude(),
    ) {
        let mix: Vec<Amplitude> = a.data().iter().zip(a2.data()).map(|(x, y)| alpha * x + beta * y).collect();
        let mixed = Tensor::from_data(3, mix).unwrap();
        let lhs = mixed.contract_pair(&[1, 2], &b, &[0, 1]).unwrap();
        let r1 = a.contract_pair(&[1, 2], &b, &[0, 1]).unwrap();
        let r2 = a2.contract_pair(&[1, 2], &b, &[0, 1]).unwrap();
        let rhs: Vec<Amplitude> = r1.data().iter().zip(r2.data()).map(|(x, y)| alpha * x + beta * y).collect();
        let rhs = Tensor::from_data(lhs.rank(), rhs).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn permute_legs_composes(t in tensor(4), p in permutation(4), q in permutation(4)) {
        let stepwise = t.permute_legs(&p).unwrap().permute_legs(&q).unwrap();
        let r: Vec<usize> = (0..4).map(|x| q[p[x]]).collect();
        prop_assert_eq!(stepwise, t.permute_legs(&r).unwrap());
    }

    #[test]
    fn permute_legs_inverse_round_trips(t in tensor(4), p in permutation(4)) {
        let mut inv = vec![0; 4];
        for (x, &y) in p.iter().enumerate() {
            inv[y] = x;
        }
        prop_assert_eq!(t.permute_legs(&p).unwrap().permute_legs(&inv).unwrap(), t);
    }

    #[test]
    fn scalar_recovered(t in tensor(3), mag in 0.1f64..10.0, phase in 0.0f64..std::f64::consts::TAU) {
        prop_assume!(t.max_abs() > 1e-3);
        let lambda = Amplitude::from_polar(mag, phase);
        let found = t.scale(lambda).equal_up_to_scalar(&t, 1e-9).unwrap();
        prop_assert!(found.is_some());
        prop_assert!((found.unwrap() - lambda).norm() < 1e-9);
    }

    #[test]
    fn compiled_operator_is_unitary(seed in 0u64..10_000) {
        let random = random_clifford_circuit(seed, 4, 12);
        let op = Circuit::new(random.width()).with_gates(random.ops().iter().copied()).unwrap();
        let u = compile(&op).contract().unwrap();
        let uu = u.dagger().unwrap().compose(&u).unwrap();
        prop_assert!(uu.max_abs_diff(&Tensor::identity(op.width())).unwrap() < 1e-10);
    }

    #[test]
    fn network_matches_dense_up_to_phase(seed in 0u64..10_000) {
        let circuit = random_clifford_circuit(seed, 5, 20);
        let state = compile(&circuit).contract().unwrap();
        let dense = Tensor::from_data(circuit.width(), dense_simulate(&circuit).unwrap().amplitudes().to_vec()).unwrap();
        let lambda = state.equal_up_to_scalar(&dense, 1e-9).unwrap();
        prop_assert!(lambda.is_some_and(|l| (l.norm() - 1.0).abs() < 1e-9));
    }

    #[test]
    fn delta_entropy_ignores_input_order(outs in prop::collection::vec(0u32..8, 8), seed in any::<u64>()) {
        let mut shuffled = outs.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = TruthTable::new(3, outs).unwrap();
        let b = TruthTable::new(3, shuffled).unwrap();
        prop_assert!((delta_entropy(&a) - delta_entropy(&b)).abs() < 1e-12);
        prop_assert!((delta_entropy_distinct(&a) - delta_entropy_distinct(&b)).abs() < 1e-12);
    }
}

#[test]
fn contraction_order_does_not_matter_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for seed in 0..40 {
        let net = compile(&random_clifford_circuit(seed, 4, 15));
        let greedy = net.contract().unwrap();
        let mut order: Vec<usize> = (0..net.bonds().len()).collect();
        for _ in 0..5 {
            order.shuffle(&mut rng);
            let t = net.contract_in_order(&order).unwrap();
            assert!(t.max_abs_diff(&greedy).unwrap() < 1e-10, "seed {seed}");
        }
    }
}

#[test]
fn distinct_entropy_is_nonnegative_and_zero_only_on_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100_000 {
        let outs: Vec<u32> = (0..8).map(|_| rng.gen_range(0..8)).collect();
        let t = TruthTable::new(3, outs).unwrap();
        let ds = delta_entropy_distinct(&t);
        assert!(ds >= -1e-12, "{t}");
        assert_eq!(ds.abs() <= 1e-12, is_reversible(&t), "{t}");
    }
}

#[test]
fn bell_state_from_gate_list() {
    let bell = Circuit::new(2)
        .with_gates([Gate::H(0), Gate::Cn { control: 0, target: 1 }])
        .unwrap()
        .with_input(vec![false, false])
        .unwrap();
    let s = compile(&bell).contract().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let expected = Tensor::from_real(2, &[h, 0.0, 0.0, h]).unwrap();
    assert!(s.max_abs_diff(&expected).unwrap() < 1e-12);
}
