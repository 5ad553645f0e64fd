//! Built-in benchmark circuits.
//!
//! Ansatz fixtures carry zero angles; bind real values with
//! [`LogicalCircuit::bind_parameters`]. Each entry lists the map it is
//! meant for and, where fixed by construction, its physical entangler count.

use super::{LogicalCircuit, LogicalGate, QloqMap};
use crate::error::{QloqError, Result};
use crate::sim::EntanglerStyle;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub circuit: LogicalCircuit,
    pub map: QloqMap,
    pub style: EntanglerStyle,
    /// Two-level entanglers in the compiled physical form.
    pub entanglers: Option<usize>,
}

const NAMES: &[&str] = &[
    "qfa",
    "fig2a",
    "fig2b",
    "fig3",
    "sim-circuit-1",
    "sim-circuit-2",
    "sim-circuit-9",
    "qloq-circuit-A",
    "qloq-circuit-I",
    "qloq-circuit-J",
    "qloq-circuit-K",
    "qloq-circuit-L",
    "qloq-circuit-M",
    "qloq-circuit-N",
    "qloq-circuit-O",
    "lih-qloq",
    "lih-qubit",
    "layer-12",
];

pub fn fixture_names() -> &'static [&'static str] {
    NAMES
}

#[derive(Clone, Copy)]
enum Rot {
    X,
    Y,
    Z,
}

/// One rotation of each listed kind on every qubit, qubit-major.
fn layer(n: usize, kinds: &[Rot]) -> Vec<LogicalGate> {
    let mut out = Vec::new();
    for q in 0..n {
        for k in kinds {
            out.push(match k {
                Rot::X => LogicalGate::rx(q, 0.0),
                Rot::Y => LogicalGate::ry(q, 0.0),
                Rot::Z => LogicalGate::rz(q, 0.0),
            });
        }
    }
    out
}

fn pair_map() -> QloqMap {
    QloqMap::contiguous(&[2, 2]).expect("static map")
}

fn intra() -> Vec<LogicalGate> {
    vec![LogicalGate::cx(0, 1), LogicalGate::cx(2, 3)]
}

fn intra_rev() -> Vec<LogicalGate> {
    vec![LogicalGate::cx(1, 0), LogicalGate::cx(3, 2)]
}

fn cccz() -> LogicalGate {
    LogicalGate::mcz(&[0, 1, 2, 3])
}

/// Ansatz with `depth` blocks of intra-carrier CNOTs around one CCCZ.
fn layered(depth: usize) -> Vec<LogicalGate> {
    let mut g = layer(4, &[Rot::X]);
    for i in 0..depth {
        g.extend(intra());
        g.push(cccz());
        g.extend(intra_rev());
        g.extend(layer(4, &[if i % 2 == 0 { Rot::Y } else { Rot::X }]));
    }
    g
}

pub fn builtin_fixture(name: &str) -> Result<Fixture> {
    let mk = |description, n: usize, gates: Vec<LogicalGate>, map: QloqMap, style, entanglers| -> Result<Fixture> {
        Ok(Fixture {
            name: NAMES.iter().find(|&&s| s == name).expect("registered"),
            description,
            circuit: LogicalCircuit::from_gates(n, gates)?,
            map,
            style,
            entanglers,
        })
    };
    let level = EntanglerStyle::LevelAddressed;
    match name {
        "qfa" => mk(
            "4-qubit full adder: two Toffolis and three CNOTs on QLOQ(0)(1,2)(3)",
            4,
            vec![
                LogicalGate::mcx(&[0, 1], 3),
                LogicalGate::cx(0, 1),
                LogicalGate::mcx(&[1, 2], 3),
                LogicalGate::cx(1, 2),
                LogicalGate::cx(0, 1),
            ],
            QloqMap::new(vec![vec![0], vec![1, 2], vec![3]])?,
            level,
            None,
        ),
        "fig2a" => mk(
            "CNOT inside one 4-level carrier: a swap of levels 2 and 3",
            2,
            vec![LogicalGate::cx(0, 1)],
            QloqMap::contiguous(&[2])?,
            level,
            Some(0),
        ),
        "fig2b" => mk(
            "CCCX across two 4-level carriers as one canonical CNOT between level permutations",
            4,
            vec![LogicalGate::mcx(&[0, 1, 2], 3)],
            pair_map(),
            EntanglerStyle::Canonical,
            Some(1),
        ),
        "fig3" => mk(
            "CNOT(1;2) across two carriers as four CCCX with every spectator polarity",
            4,
            [(false, false), (false, true), (true, false), (true, true)]
                .iter()
                .map(|&(n0, n3)| {
                    let mut neg = Vec::new();
                    if n0 {
                        neg.push(0);
                    }
                    if n3 {
                        neg.push(3);
                    }
                    LogicalGate::mcx(&[0, 1, 3], 2).with_negated(&neg)
                })
                .collect(),
            pair_map(),
            level,
            Some(4),
        ),
        "sim-circuit-1" => mk(
            "Rx and Rz on every qubit, no entanglers",
            4,
            layer(4, &[Rot::X, Rot::Z]),
            QloqMap::qubits(4),
            level,
            Some(0),
        ),
        "sim-circuit-2" => {
            let mut g = layer(4, &[Rot::X, Rot::Z]);
            g.extend([LogicalGate::cx(3, 2), LogicalGate::cx(2, 1), LogicalGate::cx(1, 0)]);
            mk("Rx, Rz layer followed by a CNOT ladder", 4, g, QloqMap::qubits(4), level, Some(3))
        }
        "sim-circuit-9" => {
            let mut g: Vec<LogicalGate> = (0..4).map(LogicalGate::h).collect();
            g.extend([LogicalGate::cz(3, 2), LogicalGate::cz(2, 1), LogicalGate::cz(1, 0)]);
            g.extend(layer(4, &[Rot::X]));
            mk("Hadamards, a CZ ladder and an Rx layer", 4, g, QloqMap::qubits(4), level, Some(3))
        }
        "qloq-circuit-A" => {
            let mut g = layer(4, &[Rot::Y]);
            g.push(cccz());
            mk("Ry layer and one CCCZ on QLOQ(0,1)(2,3)", 4, g, pair_map(), level, Some(1))
        }
        "qloq-circuit-I" | "qloq-circuit-J" | "qloq-circuit-K" | "qloq-circuit-L" | "qloq-circuit-M"
        | "qloq-circuit-N" => {
            let depth = (name.as_bytes()[name.len() - 1] - b'I') as usize + 1;
            mk(
                "layered CNOT/CCCZ ansatz on QLOQ(0,1)(2,3), one CCCZ per layer",
                4,
                layered(depth),
                pair_map(),
                level,
                Some(depth),
            )
        }
        "qloq-circuit-O" => {
            let mut g = layer(4, &[Rot::Y, Rot::Z]);
            g.extend(intra());
            g.extend(layer(4, &[Rot::Y, Rot::Z]));
            g.extend(intra_rev());
            g.extend(layer(4, &[Rot::Y]));
            g.push(cccz());
            g.extend(layer(4, &[Rot::Y, Rot::Z]));
            g.extend(intra());
            g.extend(layer(4, &[Rot::Y, Rot::Z]));
            mk("36-parameter ansatz with a single CCCZ on QLOQ(0,1)(2,3)", 4, g, pair_map(), level, Some(1))
        }
        "lih-qloq" => {
            let mut g = layer(4, &[Rot::Y]);
            g.extend(intra());
            g.push(cccz().with_negated(&[0]));
            g.extend(layer(4, &[Rot::Y]));
            mk("LiH ansatz on QLOQ(0,1)(2,3) with one entangler", 4, g, pair_map(), level, Some(1))
        }
        "lih-qubit" => {
            let mut g = layer(4, &[Rot::Y]);
            g.extend([LogicalGate::cz(0, 1), LogicalGate::cz(1, 2), LogicalGate::cz(2, 3)]);
            g.extend(layer(4, &[Rot::Y]));
            mk("LiH ansatz in qubit encoding with a CZ ladder", 4, g, QloqMap::qubits(4), level, Some(3))
        }
        "layer-12" => {
            let g: Vec<LogicalGate> = (0..5).map(|i| LogicalGate::mcz(&[2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3])).collect();
            mk(
                "entangling layer on six 4-level carriers: a CCCZ between neighbours",
                12,
                g,
                QloqMap::contiguous(&[2; 6])?,
                level,
                Some(5),
            )
        }
        _ => Err(QloqError::UnknownFixture(name.to_string())),
    }
}
