use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qloq::circuit::{LogicalCircuit, LogicalGate, QloqMap};
use qloq::compress::{expected_ratio_closed, expected_ratio_exact, random_circuit, RatioQuery};
use qloq::cost::{bridge_cost, qloq_unitary_lower_bound, remap_cost};
use qloq::loqc::{circuit_success, layer_success, GateModel, LayerKind};
use qloq::metrics::meyer_wallach;
use qloq::sim::unitary::max_abs_diff;
use qloq::sim::{compile, equivalent_up_to_global_phase, logical_unitary, physical_logical_unitary, random_unitary};
use qloq::sim::{CompileOptions, EntanglerStyle};
use qloq::synth::{csd, kak, qsd, QsdMode};
use qloq::vqe::{expectation_exact, Pauli, PauliHamiltonian, PauliTerm};

/// Partition of 0..n from a shuffle and cut points, carriers of at most 3.
fn partition_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(1usize..=3, n)).prop_map(|(order, sizes)| {
        let mut out = Vec::new();
        let mut rest = order.as_slice();
        for s in sizes {
            if rest.is_empty() {
                break;
            }
            let k = s.min(rest.len());
            out.push(rest[..k].to_vec());
            rest = &rest[k..];
        }
        out
    })
}

fn gate_strategy(n: usize) -> impl Strategy<Value = LogicalGate> {
    let q = 0..n;
    prop_oneof![
        (q.clone(), -3.0f64..3.0).prop_map(|(q, t)| LogicalGate::ry(q, t)),
        (q.clone(), -3.0f64..3.0).prop_map(|(q, t)| LogicalGate::rz(q, t)),
        q.clone().prop_map(LogicalGate::h),
        (q.clone(), q.clone()).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| LogicalGate::cx(a, b)),
        (q.clone(), q.clone()).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| LogicalGate::cz(a, b)),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| LogicalGate::mcx(&v[..2], v[2])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn index_maps_are_inverse(p in partition_strategy(5)) {
        let map = QloqMap::new(p).unwrap();
        for x in 0..map.dim() {
            prop_assert_eq!(map.logical_index(map.physical_index(x)), x);
        }
    }

    #[test]
    fn compilation_preserves_the_unitary(
        p in partition_strategy(3),
        gates in prop::collection::vec(gate_strategy(3), 1..8),
        canonical in any::<bool>(),
    ) {
        let map = QloqMap::new(p).unwrap();
        let c = LogicalCircuit::from_gates(3, gates).unwrap();
        let style = if canonical { EntanglerStyle::Canonical } else { EntanglerStyle::LevelAddressed };
        let pc = compile(&c, &map, CompileOptions { style }).unwrap();
        let (ok, fid) = equivalent_up_to_global_phase(
            &logical_unitary(&c).unwrap(),
            &physical_logical_unitary(&pc, 1e-10).unwrap(),
            1e-10,
        ).unwrap();
        prop_assert!(ok, "fidelity {}", fid);
    }

    #[test]
    fn single_carrier_needs_no_entanglers(gates in prop::collection::vec(gate_strategy(3), 1..8)) {
        let c = LogicalCircuit::from_gates(3, gates).unwrap();
        let pc = compile(&c, &QloqMap::new(vec![vec![0, 1, 2]]).unwrap(), CompileOptions::default()).unwrap();
        prop_assert_eq!(pc.entangler_count(), 0);
    }

    #[test]
    fn bridge_cost_halves_per_extra_qubit(ga in 1u32..5, gb in 1u32..5, n in 2u32..9) {
        prop_assume!(n < ga + gb);
        prop_assert_eq!(bridge_cost(ga, gb, n).unwrap(), 2 * bridge_cost(ga, gb, n + 1).unwrap());
        prop_assert_eq!(bridge_cost(ga, gb, ga + gb).unwrap(), 1);
    }

    #[test]
    fn merging_carriers_never_raises_the_bound(sizes in prop::collection::vec(1u32..4, 2..5)) {
        let split = qloq_unitary_lower_bound(&sizes).unwrap();
        let mut merged = sizes[1..].to_vec();
        merged[0] += sizes[0];
        let merged_lb = qloq_unitary_lower_bound(&merged).unwrap();
        prop_assert!(merged_lb.k <= split.k || merged_lb.estimate || split.estimate);
    }

    #[test]
    fn round_trip_is_twice_one_way(f in 2u32..12) {
        prop_assert_eq!(remap_cost(f, true).unwrap(), 2 * remap_cost(f, false).unwrap());
    }

    #[test]
    fn ratio_closed_form_matches_exact(g in 1u32..6, n in 2u32..7, extra in 0u64..30) {
        let big_n = (n as u64).max(g as u64 + 1) + extra;
        let q = RatioQuery::new(g, n, big_n).unwrap();
        let exact = expected_ratio_exact(q).unwrap().to_f64().unwrap();
        prop_assert!((expected_ratio_closed(q).unwrap() - exact).abs() <= 1e-12 * exact.max(1.0));
    }

    #[test]
    fn random_circuits_have_valid_edges(n in 2usize..9, m in 0usize..40, seed in any::<u64>()) {
        let c = random_circuit(n, m, seed).unwrap();
        prop_assert_eq!(c.edges.len(), m);
        prop_assert!(c.edges.iter().all(|&(a, b)| a < b && b < n));
        prop_assert_eq!(&c, &random_circuit(n, m, seed).unwrap());
    }

    #[test]
    fn heralded_success_grows_with_carrier_size(n in 1usize..30, g in 1usize..8) {
        let a = layer_success(LayerKind::HeraldedKnill, n, g, 1).unwrap().probability;
        let b = layer_success(LayerKind::HeraldedKnill, n, g + 1, 1).unwrap().probability;
        prop_assert!(a <= b);
    }

    #[test]
    fn success_is_multiplicative(a in prop::collection::vec(gate_strategy(4), 0..6), b in prop::collection::vec(gate_strategy(4), 0..6)) {
        let map = QloqMap::new(vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        let ca = LogicalCircuit::from_gates(4, a).unwrap();
        let cb = LogicalCircuit::from_gates(4, b).unwrap();
        let pa = compile(&ca, &map, CompileOptions::default()).unwrap();
        let pb = compile(&cb, &map, CompileOptions::default()).unwrap();
        let mut both = pa.clone();
        both.append(&pb).unwrap();
        let none = BTreeMap::new();
        let s = |pc| circuit_success(pc, GateModel::KnillCz, &none).unwrap();
        prop_assert_eq!(s(&both), s(&pa) * s(&pb));
    }

    #[test]
    fn meyer_wallach_is_a_fraction(seed in any::<u64>()) {
        let u = random_unitary(8, &mut ChaCha8Rng::seed_from_u64(seed));
        let amps: Vec<_> = u.column(0).iter().copied().collect();
        let q = meyer_wallach(&amps, 3).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&q));
    }

    #[test]
    fn expectation_matches_dense_matrix(
        seed in any::<u64>(),
        terms in prop::collection::vec((-2.0f64..2.0, prop::collection::vec(0usize..4, 3)), 1..6),
    ) {
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let terms: Vec<PauliTerm> = terms
            .into_iter()
            .map(|(coeff, ls)| PauliTerm { coeff, paulis: ls.into_iter().map(|i| letters[i]).collect() })
            .collect();
        let h = PauliHamiltonian::new(terms).unwrap();
        let u = random_unitary(8, &mut ChaCha8Rng::seed_from_u64(seed));
        let psi = u.column(0).into_owned();
        let dense = (psi.adjoint() * h.matrix() * &psi)[(0, 0)].re;
        let amps: Vec<_> = psi.iter().copied().collect();
        prop_assert!((expectation_exact(&amps, &h).unwrap() - dense).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn decompositions_reconstruct(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u4 = random_unitary(4, &mut rng);
        let k = kak(&u4).unwrap();
        prop_assert!(max_abs_diff(&k.reconstruct(), &u4) < 1e-9);
        let u8 = random_unitary(8, &mut rng);
        prop_assert!(max_abs_diff(&csd(&u8).unwrap().reconstruct(), &u8) < 1e-9);
    }

    #[test]
    fn qsd_is_exact_in_every_mode(seed in any::<u64>(), mode in 0usize..4) {
        let mode = [QsdMode::Qubit, QsdMode::Qloq { g: 2 }, QsdMode::Qloq { g: 3 }, QsdMode::QloqWithRemap { g: 2 }][mode];
        let u = random_unitary(8, &mut ChaCha8Rng::seed_from_u64(seed));
        let r = qsd(&u, mode).unwrap();
        prop_assert!(r.fidelity >= 1.0 - 1e-9, "{:?}: {}", mode, r.fidelity);
        prop_assert_eq!(r.physical.entangler_count(), r.entanglers);
    }
}
