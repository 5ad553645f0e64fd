//! JSON interchange for circuits and matrices. Complex numbers are
//! `[re, im]` pairs; matrices are row-major grids of them.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::logical::{GateKind, LogicalCircuit, LogicalGate};
use super::map::QloqMap;
use super::physical::{Entangler, Flavor, PhysicalCircuit, PhysicalOp};
use crate::error::{QloqError, Result};

pub type ComplexGrid = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_grid(m: &DMatrix<C64>) -> ComplexGrid {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn grid_to_matrix(g: &ComplexGrid) -> Result<DMatrix<C64>> {
    let rows = g.len();
    if rows == 0 {
        return Err(QloqError::Parse("empty matrix".into()));
    }
    let cols = g[0].len();
    if g.iter().any(|r| r.len() != cols) {
        return Err(QloqError::Parse("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_fn(rows, cols, |i, j| C64::new(g[i][j][0], g[i][j][1])))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    controls: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    negated_controls: Vec<usize>,
    #[serde(default)]
    target: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<ComplexGrid>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<Vec<Vec<usize>>>,
    gates: Vec<GateDoc>,
}

/// Parse a circuit document, returning the circuit and its map if present.
pub fn parse_circuit(text: &str) -> Result<(LogicalCircuit, Option<QloqMap>)> {
    let doc: CircuitDoc = serde_json::from_str(text)?;
    let mut circuit = LogicalCircuit::new(doc.qubits);
    for (i, g) in doc.gates.into_iter().enumerate() {
        let kind = GateKind::parse(&g.kind)?;
        let matrix = g.matrix.as_ref().map(grid_to_matrix).transpose()?;
        let gate = LogicalGate {
            kind,
            controls: g.controls,
            negated_controls: g.negated_controls,
            targets: g.target,
            params: g.params,
            matrix,
        };
        gate.validate(doc.qubits)
            .map_err(|e| QloqError::InvalidCircuit(format!("gate {i}: {e}")))?;
        circuit.gates.push(gate);
    }
    let map = match doc.map {
        Some(p) => {
            let m = QloqMap::new(p)?;
            if m.num_qubits() != doc.qubits {
                return Err(QloqError::InvalidMap(format!(
                    "map covers {} qubits but the circuit has {}",
                    m.num_qubits(),
                    doc.qubits
                )));
            }
            Some(m)
        }
        None => None,
    };
    Ok((circuit, map))
}

pub fn circuit_to_json(circuit: &LogicalCircuit, map: Option<&QloqMap>) -> String {
    let doc = CircuitDoc {
        qubits: circuit.num_qubits,
        map: map.map(|m| m.partition().to_vec()),
        gates: circuit
            .gates
            .iter()
            .map(|g| GateDoc {
                kind: g.kind.name().to_string(),
                controls: g.controls.clone(),
                negated_controls: g.negated_controls.clone(),
                target: g.targets.clone(),
                params: g.params.clone(),
                matrix: g.matrix.as_ref().map(matrix_to_grid),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("circuit docs always serialize")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
enum OpDoc {
    LocalUnitary {
        carrier: usize,
        matrix: ComplexGrid,
    },
    TwoLevelEntangler {
        control: usize,
        control_level: usize,
        target: usize,
        levels: [usize; 2],
        flavor: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PhysicalDoc {
    carriers: Vec<Vec<usize>>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    entangler_count: usize,
    ops: Vec<OpDoc>,
}

pub fn physical_to_json(c: &PhysicalCircuit) -> String {
    let ops = c
        .ops()
        .iter()
        .map(|op| match op {
            PhysicalOp::Local { carrier, matrix } => {
                OpDoc::LocalUnitary { carrier: *carrier, matrix: matrix_to_grid(matrix) }
            }
            PhysicalOp::Entangler(e) => OpDoc::TwoLevelEntangler {
                control: e.control,
                control_level: e.control_level,
                target: e.target,
                levels: [e.t0, e.t1],
                flavor: match e.flavor {
                    Flavor::Cx => "cx".into(),
                    Flavor::Cz => "cz".into(),
                },
            },
        })
        .collect();
    let doc = PhysicalDoc {
        carriers: c.map().partition().to_vec(),
        inputs: c.inputs().to_vec(),
        outputs: c.outputs().to_vec(),
        entangler_count: c.entangler_count(),
        ops,
    };
    serde_json::to_string_pretty(&doc).expect("physical docs always serialize")
}

pub fn parse_physical(text: &str) -> Result<PhysicalCircuit> {
    let doc: PhysicalDoc = serde_json::from_str(text)?;
    let map = QloqMap::new(doc.carriers)?;
    let mut c = PhysicalCircuit::with_io(map, doc.inputs, doc.outputs)?;
    for op in doc.ops {
        c.push(match op {
            OpDoc::LocalUnitary { carrier, matrix } => PhysicalOp::Local { carrier, matrix: grid_to_matrix(&matrix)? },
            OpDoc::TwoLevelEntangler { control, control_level, target, levels, flavor } => {
                let flavor = match flavor.as_str() {
                    "cx" => Flavor::Cx,
                    "cz" => Flavor::Cz,
                    f => return Err(QloqError::Parse(format!("unknown entangler flavor `{f}`"))),
                };
                PhysicalOp::Entangler(Entangler { control, control_level, target, t0: levels[0], t1: levels[1], flavor })
            }
        })?;
    }
    if c.entangler_count() != doc.entangler_count {
        return Err(QloqError::Parse(format!(
            "declared entangler_count {} but found {}",
            doc.entangler_count,
            c.entangler_count()
        )));
    }
    Ok(c)
}

pub fn parse_matrix(text: &str) -> Result<DMatrix<C64>> {
    let g: ComplexGrid = serde_json::from_str(text)?;
    grid_to_matrix(&g)
}

pub fn matrix_to_json(m: &DMatrix<C64>) -> String {
    serde_json::to_string(&matrix_to_grid(m)).expect("grids always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cnot_document() {
        let (c, m) = parse_circuit(r#"{"qubits":2,"gates":[{"kind":"mcx","controls":[0],"target":[1]}]}"#).unwrap();
        assert!(m.is_none());
        assert_eq!(c.gates, vec![LogicalGate::cx(0, 1)]);
    }

    #[test]
    fn map_field_parsed() {
        let (_, m) = parse_circuit(r#"{"qubits":4,"map":[[0,1],[2,3]],"gates":[]}"#).unwrap();
        assert_eq!(m.unwrap().label(), "QLOQ(0,1)(2,3)");
    }

    #[test]
    fn out_of_range_target_rejected() {
        let r = parse_circuit(r#"{"qubits":4,"gates":[{"kind":"x","target":[5]}]}"#);
        assert!(r.is_err());
    }

    #[test]
    fn unknown_kind_rejected() {
        let r = parse_circuit(r#"{"qubits":1,"gates":[{"kind":"toffoli","target":[0]}]}"#);
        assert!(matches!(r, Err(QloqError::Parse(_))));
    }

    #[test]
    fn opaque_payload_round_trips() {
        let mut c = LogicalCircuit::new(1);
        c.push(LogicalGate::phase(0, 0.25)).unwrap();
        let (back, _) = parse_circuit(&circuit_to_json(&c, None)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn non_unitary_payload_rejected() {
        let r = parse_circuit(r#"{"qubits":1,"gates":[{"kind":"opaque-unitary","target":[0],"matrix":[[[1,0],[1,0]],[[0,0],[1,0]]]}]}"#);
        assert!(r.is_err());
    }
}
