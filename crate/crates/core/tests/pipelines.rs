use qloq::circuit::json::{parse_physical, physical_to_json};
use qloq::circuit::{parse_circuit, QloqMap};
use qloq::cost::{circuit_cost, CostOptions};
use qloq::sim::sample::{histogram_csv, sample};
use qloq::sim::{compile, CompileOptions, MixedRadixState};

const GHZ: &str = r#"{
  "qubits": 3,
  "map": [[0, 1], [2]],
  "gates": [
    {"kind": "h", "target": [0]},
    {"kind": "cx", "controls": [0], "target": [1]},
    {"kind": "cx", "controls": [1], "target": [2]}
  ]
}"#;

#[test]
fn json_to_cost_compile_and_samples() {
    let (c, map) = parse_circuit(GHZ).unwrap();
    let map = map.unwrap();
    let report = circuit_cost(&c, &map, CostOptions::default()).unwrap();
    // CX(1,2) spans carriers of 2 and 1 qubits with arity 2: 2^{2+1-2}
    assert_eq!(report.total, 2);
    assert!(report.to_csv().ends_with("total,2\n"));

    let pc = compile(&c, &map, CompileOptions::default()).unwrap();
    assert_eq!(pc.entangler_count(), 2);
    let back = parse_physical(&physical_to_json(&pc)).unwrap();
    assert_eq!(back.entangler_count(), 2);

    let mut state = MixedRadixState::zero(&map);
    state.apply_circuit(&back).unwrap();
    let h = sample(&state, 10_000, 3).unwrap();
    assert_eq!(h.keys().cloned().collect::<Vec<_>>(), vec!["000".to_string(), "111".to_string()]);
    let zeros = h["000"] as f64 / 10_000.0;
    assert!((zeros - 0.5).abs() < 0.02, "{zeros}");
    assert!(histogram_csv(&h).starts_with("bitstring,count\n000,"));
}

#[test]
fn qubit_map_costs_each_cnot_once() {
    let (c, _) = parse_circuit(GHZ).unwrap();
    let report = circuit_cost(&c, &QloqMap::qubits(3), CostOptions::default()).unwrap();
    assert_eq!(report.total, 2);
}
