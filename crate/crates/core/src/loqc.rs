//! Linear-optical resource model: photon and mode counts, success
//! probabilities of probabilistic entangling gates and layers, and
//! runtime speedup arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::circuit::{PhysicalCircuit, QloqMap};
use crate::cost::speedup_estimate;
use crate::error::{QloqError, Result};

/// Extra modes taken by each heralded or post-selected entangler.
pub const ANCILLA_MODES: usize = 2;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(p: &BigRational) -> f64 {
    p.to_f64().unwrap_or(0.0)
}

/// Exact probability from `a/b` or a decimal such as `0.448`.
pub fn parse_probability(text: &str) -> Result<BigRational> {
    let bad = || QloqError::Parse(format!("`{text}` is not a probability"));
    let t = text.trim();
    let p = if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b == BigInt::from(0) {
            return Err(bad());
        }
        BigRational::new(a, b)
    } else {
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32))
    };
    if p <= BigRational::from_integer(0.into()) || p > BigRational::one() {
        return Err(QloqError::OutOfRange(format!("probability {text} outside (0, 1]")));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateModel {
    /// Post-selected CZ, success 1/9.
    RalphCz,
    /// Heralded CZ, success 2/27.
    KnillCz,
}

impl GateModel {
    pub fn success(self) -> BigRational {
        match self {
            GateModel::RalphCz => ratio(1, 9),
            GateModel::KnillCz => ratio(2, 27),
        }
    }
}

impl std::str::FromStr for GateModel {
    type Err = QloqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ralph-cz" | "ralph" => Ok(GateModel::RalphCz),
            "knill-cz" | "knill" => Ok(GateModel::KnillCz),
            other => Err(QloqError::Parse(format!("unknown gate model `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayerKind {
    /// One multi-controlled Z across all carriers built from Knill CZs.
    HeraldedKnill,
    /// Cascaded Ralph CZs across a qubit register.
    CascadeRalph,
}

impl std::str::FromStr for LayerKind {
    type Err = QloqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heralded" | "heralded-knill" => Ok(LayerKind::HeraldedKnill),
            "cascade" | "cascade-ralph" => Ok(LayerKind::CascadeRalph),
            other => Err(QloqError::Parse(format!("unknown layer kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerSuccess {
    pub probability: BigRational,
    /// True when the value comes from the 3^-N cascade law away from its
    /// measured points N = 2, 4, 6.
    pub interpolated: bool,
}

/// Success of `layers` global entangling layers over `n` qubits on
/// carriers of at most `g` qubits.
pub fn layer_success(kind: LayerKind, n: usize, g: usize, layers: usize) -> Result<LayerSuccess> {
    if n == 0 || g == 0 {
        return Err(QloqError::OutOfRange(format!("need N >= 1 and G >= 1, got N={n} G={g}")));
    }
    let layers = i32::try_from(layers).map_err(|_| QloqError::OutOfRange("too many layers".into()))?;
    match kind {
        LayerKind::HeraldedKnill => {
            let carriers = n.div_ceil(g) as i32;
            Ok(LayerSuccess { probability: ratio(2, 27).pow((carriers - 1) * layers), interpolated: false })
        }
        LayerKind::CascadeRalph => {
            if g != 1 {
                return Err(QloqError::Unsupported("cascaded Ralph CZs are a qubit-encoding layer (G = 1)".into()));
            }
            let per_layer = if n == 1 { BigRational::one() } else { ratio(1, 3).pow(n as i32) };
            Ok(LayerSuccess { probability: per_layer.pow(layers), interpolated: !matches!(n, 1 | 2 | 4 | 6) })
        }
    }
}

/// Product of per-entangler success probabilities. `overrides` maps an
/// entangler's position among the circuit's entanglers to its probability.
pub fn circuit_success(
    physical: &PhysicalCircuit,
    model: GateModel,
    overrides: &BTreeMap<usize, BigRational>,
) -> Result<BigRational> {
    let count = physical.entangler_count();
    if let Some((&bad, _)) = overrides.range(count..).next() {
        return Err(QloqError::OutOfRange(format!("override for entangler {bad}, circuit has {count}")));
    }
    let mut p = BigRational::one();
    for i in 0..count {
        let q = overrides.get(&i).cloned().unwrap_or_else(|| model.success());
        if q <= BigRational::from_integer(0.into()) || q > BigRational::one() {
            return Err(QloqError::OutOfRange(format!("entangler {i} probability outside (0, 1]")));
        }
        p *= q;
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceEstimate {
    pub photons: usize,
    pub modes: usize,
    pub success: f64,
    pub notes: Vec<String>,
}

/// One photon per carrier; 2^g modes per carrier plus ancilla and dump ports.
pub fn resources(
    map: &QloqMap,
    physical: &PhysicalCircuit,
    model: GateModel,
    overrides: &BTreeMap<usize, BigRational>,
    dump_ports: usize,
) -> Result<ResourceEstimate> {
    if physical.map() != map {
        return Err(QloqError::InvalidMap(format!("circuit map {} differs from {}", physical.map().label(), map.label())));
    }
    let carrier_modes: usize = (0..map.num_carriers()).map(|c| map.levels(c)).sum();
    let e = physical.entangler_count();
    let mut notes = Vec::new();
    if !overrides.is_empty() {
        notes.push(format!("{} entangler probabilities overridden", overrides.len()));
    }
    if model == GateModel::KnillCz && e > 0 {
        notes.push("Knill CZs also consume ancilla photons, not counted".into());
    }
    Ok(ResourceEstimate {
        photons: map.num_carriers(),
        modes: carrier_modes + ANCILLA_MODES * e + dump_ports,
        success: to_f64(&circuit_success(physical, model, overrides)?),
        notes,
    })
}

/// Inputs for comparing setup a against setup b.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub success_a: f64,
    pub success_b: f64,
    pub rate_a: f64,
    pub rate_b: f64,
    pub iters_a: f64,
    pub iters_b: f64,
}

impl Scenario {
    pub fn speedup(&self) -> Result<f64> {
        speedup_estimate(self.success_a, self.success_b, self.rate_a, self.rate_b, self.iters_a, self.iters_b)
    }
}

/// LiH VQE: balanced-gate carrier ansatz (0.448, 2-photon rate 9 kHz,
/// 218 iterations) against the cascaded qubit ansatz (1/81, 4-photon rate
/// 20 Hz, 103 iterations).
pub fn lih_scenario() -> Scenario {
    Scenario {
        name: "lih".into(),
        success_a: 0.448,
        success_b: 1.0 / 81.0,
        rate_a: 9000.0,
        rate_b: 20.0,
        iters_a: 218.0,
        iters_b: 103.0,
    }
}

/// Six qubits: one heralded layer on two 8-level carriers (4 photons)
/// against a six-qubit cascade (6 photons), with a 500x coincidence-rate gap.
pub fn six_qubit_scenario() -> Scenario {
    Scenario {
        name: "six-qubit".into(),
        success_a: 2.0 / 27.0,
        success_b: 1.0 / 729.0,
        rate_a: 500.0,
        rate_b: 1.0,
        iters_a: 1.0,
        iters_b: 1.0,
    }
}

pub fn speedup_table(scenarios: &[Scenario]) -> Result<String> {
    let mut s = String::from("name,speedup\n");
    for sc in scenarios {
        s.push_str(&format!("{},{}\n", sc.name, sc.speedup()?));
    }
    Ok(s)
}

/// `N,G,success` rows of the heralded single-layer curve.
pub fn heralded_curve_csv(n_max: usize, gs: &[usize]) -> Result<String> {
    let mut s = String::from("N,G,success\n");
    for &g in gs {
        for n in 1..=n_max {
            let p = layer_success(LayerKind::HeraldedKnill, n, g, 1)?;
            s.push_str(&format!("{n},{g},{:e}\n", to_f64(&p.probability)));
        }
    }
    Ok(s)
}
