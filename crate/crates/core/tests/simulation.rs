use std::sync::Arc;
use std::time::{Duration, Instant};

use anyon_mcg::mcg::humphries_indices;
use anyon_mcg::model::{AbelianAnyonModel, BUILTIN_MODELS};
use anyon_mcg::pauli::PauliLabel;
use anyon_mcg::phase::RationalPhase;
use anyon_mcg::sim::{
    compare, conjugate_placed, dense_simulate, random_circuit, stabilizer_run, stabilizer_simulate, Circuit, CircuitGate,
    StabilizerState,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model(name: &str) -> Arc<AbelianAnyonModel> {
    Arc::new(AbelianAnyonModel::builtin(name).unwrap())
}

#[test]
fn oracle_equivalence_small_models_up_to_genus_3() {
    for name in BUILTIN_MODELS {
        let m = model(name);
        assert!(m.order() <= 4);
        for genus in 1..=3 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + genus as u64);
            for _ in 0..50 {
                let len = rng.gen_range(0..=50);
                let c = random_circuit(m.clone(), genus, len, &mut rng).unwrap();
                let tv = compare(&c, 4096).unwrap();
                assert!(tv < 1e-9, "{name} g={genus} {:?}: {tv:e}", c.twist_indices());
            }
        }
    }
}

#[test]
fn distributions_sum_to_one_and_support_is_a_coset() {
    let m = model("z4");
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let c = random_circuit(m.clone(), 2, 30, &mut rng).unwrap();
        let d = stabilizer_simulate(&c, 4096).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-9);
        let support = d.support(1e-9);
        let x0 = support[0].clone();
        let shifted: Vec<_> = support.iter().map(|x| x - &x0).collect();
        for a in &shifted {
            for b in &shifted {
                assert!(shifted.contains(&(a + b)), "support is not a coset");
            }
        }
        let p = d.prob(&x0);
        assert!(support.iter().all(|x| (d.prob(x) - p).abs() < 1e-9), "stabilizer outcomes are uniform on the support");
        assert!((dense_simulate(&c, 4096).unwrap().total() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn generator_count_and_group_order_are_invariant() {
    let m = model("toric");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = random_circuit(m.clone(), 3, 40, &mut rng).unwrap();
    let mut state = StabilizerState::basis(c.init());
    let n = state.generators().len();
    for g in c.gates() {
        let CircuitGate::Twist { gate, .. } = g else { unreachable!() };
        state.apply_twist(&m, gate);
        assert_eq!(state.generators().len(), n);
        assert!(state.generators_commute());
    }
    assert_eq!(state.group(4096).unwrap().len(), 64);
}

#[test]
fn empty_circuit_is_a_point_mass() {
    let m = model("z3");
    let c = Circuit::new(m.clone(), 2, m.group().power(2).unwrap().element(&[2, 1]).unwrap()).unwrap();
    let d = stabilizer_simulate(&c, 4096).unwrap();
    assert_eq!(d.support(1e-12), vec![c.init().clone()]);
    assert_eq!(compare(&c, 4096).unwrap(), 0.0);
}

fn time_run(c: &Circuit) -> Duration {
    (0..5)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(stabilizer_run(c).unwrap());
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn stabilizer_cost_is_linear_in_gate_count() {
    let m = model("toric");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let short = random_circuit(m.clone(), 3, 2_000, &mut rng).unwrap();
    let long = random_circuit(m, 3, 20_000, &mut rng).unwrap();
    let (a, b) = (time_run(&short), time_run(&long));
    // 10x the gates may take at most 20x the time; a millisecond of slack
    // absorbs timer noise.
    assert!(b <= a * 20 + Duration::from_millis(1), "short {a:?}, long {b:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Closed-form conjugation agrees with dense conjugation on arbitrary labels.
    #[test]
    fn closed_form_conjugation(model_idx in 0usize..4, genus in 1usize..=2, seed in any::<u64>(), num in 0i64..12) {
        let m = model(BUILTIN_MODELS[model_idx]);
        let spec = m.group().power(genus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = spec.order() as usize;
        let p = PauliLabel::new(
            RationalPhase::new(num, 12),
            spec.element_at(rng.gen_range(0..n)),
            spec.element_at(rng.gen_range(0..n)),
        ).unwrap();
        let idx = humphries_indices(genus);
        let k = idx[rng.gen_range(0..idx.len())];
        let gate = anyon_mcg::mcg::humphries_gate(genus, k).unwrap();
        let u = gate.dense(&m, &Default::default()).unwrap();
        let exact = conjugate_placed(&m, &gate, &p).matrix(4096).unwrap();
        prop_assert!(exact.max_abs_diff(&p.matrix(4096).unwrap().conjugate_by(&u)) < 1e-9);
    }

    /// Labels stay in lowest terms and phases never leave Q/Z.
    #[test]
    fn long_circuits_keep_exact_phases(seed in any::<u64>()) {
        let m = model("z3");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(m, 2, 200, &mut rng).unwrap();
        let s = stabilizer_run(&c).unwrap();
        for g in s.generators() {
            prop_assert!(g.phase.denom() > 0 && g.phase.numer() >= 0 && g.phase.numer() < g.phase.denom());
            prop_assert!(6 % g.phase.denom() == 0, "phase {} outside the sixth roots", g.phase);
        }
    }
}
