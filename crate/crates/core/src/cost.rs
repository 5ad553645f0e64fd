//! Closed-form entangler counts and a gate-by-gate costing engine.
//!
//! Every count is an exact integer. The unit of cost throughout is one
//! two-level physical entangling gate (CNOT or CZ).

use num_rational::Ratio;
use serde::Serialize;

use crate::circuit::{GateKind, LogicalCircuit, QloqMap};
use crate::error::{QloqError, Result};

fn pow2(e: u32) -> Result<u64> {
    1u64.checked_shl(e)
        .filter(|_| e < 63)
        .ok_or_else(|| QloqError::OutOfRange(format!("2^{e} overflows")))
}

fn pow4(e: u32) -> Result<u64> {
    pow2(2 * e)
}

/// Multi-controlled gate of arity `n` between carriers holding `g_a` and
/// `g_b` qubits: 2^{g_a+g_b-n}.
pub fn bridge_cost(g_a: u32, g_b: u32, n: u32) -> Result<u64> {
    if g_a == 0 || g_b == 0 {
        return Err(QloqError::OutOfRange("carriers hold at least one qubit".into()));
    }
    if n < 2 || n > g_a + g_b {
        return Err(QloqError::OutOfRange(format!("arity {n} outside 2..={}", g_a + g_b)));
    }
    pow2(g_a + g_b - n)
}

/// CC...CZ over `n - x` qubits of a `g`-qubit carrier and `x` external
/// qubits with an auxiliary level: 2x - 2 + 2^{g-n+x}.
pub fn external_cost(g: u32, n: u32, x: u32) -> Result<u64> {
    if x == 0 {
        return Err(QloqError::OutOfRange("x = 0 is an internal gate (cost 0)".into()));
    }
    if x >= n || n - x > g {
        return Err(QloqError::OutOfRange(format!("need 1 <= n - x <= g, got g={g} n={n} x={x}")));
    }
    Ok(2 * x as u64 - 2 + pow2(g + x - n)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceMode {
    /// Qubit encoding without ancillas: 1 for a CNOT, 2^n - 2 beyond
    /// (6 for a Toffoli, 14 for a CCCX).
    QubitPlain,
    /// Known lower bound in qubit encoding: 2n.
    QubitLowerBound,
    /// Auxiliary-level construction over `carriers` carriers: 2q - 3.
    AuxLevel { carriers: u32 },
}

pub fn multicontrolled_reference_cost(n: u32, mode: ReferenceMode) -> Result<u64> {
    if n < 2 {
        return Err(QloqError::OutOfRange("arity must be at least 2".into()));
    }
    match mode {
        ReferenceMode::QubitPlain => Ok(if n == 2 { 1 } else { pow2(n)? - 2 }),
        ReferenceMode::QubitLowerBound => Ok(2 * n as u64),
        ReferenceMode::AuxLevel { carriers } => {
            if carriers < 2 {
                return Err(QloqError::OutOfRange("need at least two carriers".into()));
            }
            Ok(2 * carriers as u64 - 3)
        }
    }
}

/// ceil(N/G) - 1 entanglers to connect N qubits on carriers of at most G.
pub fn min_entangling_count(n_qubits: u64, max_g: u64) -> Result<u64> {
    if n_qubits == 0 || max_g == 0 {
        return Err(QloqError::OutOfRange("N and G must be positive".into()));
    }
    Ok(n_qubits.div_ceil(max_g) - 1)
}

/// Worst-case CNOT lower bound for an n-qubit unitary: ceil((4^n - 3n - 1)/4).
pub fn qubit_unitary_lower_bound(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(QloqError::OutOfRange("n must be positive".into()));
    }
    Ok((pow4(n)? - 3 * n as u64 - 1).div_ceil(4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub k: u64,
    /// Set when some carrier is left out of every counted gate, so the
    /// value is an estimate rather than a strict bound.
    pub estimate: bool,
}

/// Minimum entangler count for an arbitrary unitary on carriers of the
/// given sizes. Uniform partitions use the closed form; otherwise the
/// parameter-counting inequality is solved with every gate between the two
/// largest carriers.
pub fn qloq_unitary_lower_bound(partition: &[u32]) -> Result<LowerBound> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(QloqError::OutOfRange("partition needs positive carrier sizes".into()));
    }
    let n: u32 = partition.iter().sum();
    let target = pow4(n)? as u128 - 1;
    let g0 = partition[0];
    if partition.iter().all(|&g| g == g0) {
        let q = partition.len() as u128;
        let have = (pow4(g0)? as u128 - 1) * q;
        let per = 2 * (pow4(g0)? - pow2(g0)?) as u128;
        let k = if partition.len() == 1 { 0 } else { target.saturating_sub(have).div_ceil(per) };
        return Ok(LowerBound { k: k as u64, estimate: false });
    }
    let mut sorted = partition.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut have: u128 = 0;
    for &g in &sorted {
        have += pow4(g)? as u128 - 1;
    }
    let per: u128 = sorted[..2].iter().map(|&g| (pow4(g).unwrap() - pow2(g).unwrap()) as u128).sum();
    let k = target.saturating_sub(have).div_ceil(per);
    Ok(LowerBound { k: k as u64, estimate: sorted.len() > 2 })
}

/// Greedy partition of n qubits into carriers of at most G: G, G, ..., rest.
pub fn greedy_partition(n: u32, max_g: u32) -> Vec<u32> {
    let mut p = vec![max_g; (n / max_g) as usize];
    if n % max_g != 0 {
        p.push(n % max_g);
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsdVariant {
    QubitBase { l: u32, c_l: u64 },
    QubitOptimized,
    Qloq { g: u32 },
    QloqWithRemap { g: u32 },
}

pub fn qsd_cost(n: u32, variant: QsdVariant) -> Result<u64> {
    let half_term = |n: u32| -> Result<i128> { Ok(3 * pow2(n - 1)? as i128) };
    let v: i128 = match variant {
        QsdVariant::QubitBase { l, c_l } => {
            if l == 0 || n < l {
                return Err(QloqError::OutOfRange(format!("need 1 <= l <= n, got l={l} n={n}")));
            }
            pow4(n - l)? as i128 * (c_l as i128 + half_term(l)?) - half_term(n)?
        }
        QsdVariant::QubitOptimized => {
            if n == 0 {
                return Err(QloqError::OutOfRange("n must be positive".into()));
            }
            let r = Ratio::new(23i128, 48) * Ratio::from_integer(pow4(n)? as i128)
                - Ratio::new(3i128, 2) * Ratio::from_integer(pow2(n)? as i128)
                + Ratio::new(4i128, 3);
            if !r.is_integer() {
                return Err(QloqError::Numerical(format!("optimized QSD count not integral at n={n}: {r}")));
            }
            r.to_integer()
        }
        QsdVariant::Qloq { g } | QsdVariant::QloqWithRemap { g } => {
            if g == 0 || g > n {
                return Err(QloqError::OutOfRange(format!("need 1 <= g <= n, got g={g} n={n}")));
            }
            let base = half_term(g)? * pow4(n - g)? as i128 - half_term(n)?;
            match variant {
                QsdVariant::QloqWithRemap { .. } if g >= 2 => base + remap_cost(g, true)? as i128,
                _ => base,
            }
        }
    };
    u64::try_from(v).map_err(|_| QloqError::Numerical(format!("negative count {v}")))
}

/// Cost of merging `f` qubits onto one carrier (and back, if `round_trip`).
pub fn remap_cost(f: u32, round_trip: bool) -> Result<u64> {
    if f < 2 {
        return Err(QloqError::OutOfRange("remapping needs f >= 2".into()));
    }
    let rt = pow2(f + 2)? - 8;
    Ok(if round_trip { rt } else { rt / 2 })
}

/// Relative speed of setup a over setup b:
/// (success_a/success_b)(rate_a/rate_b)(iters_b/iters_a).
pub fn speedup_estimate(success_a: f64, success_b: f64, rate_a: f64, rate_b: f64, iters_a: f64, iters_b: f64) -> Result<f64> {
    let all = [success_a, success_b, rate_a, rate_b, iters_a, iters_b];
    if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(QloqError::OutOfRange("speedup inputs must be positive".into()));
    }
    Ok((success_a / success_b) * (rate_a / rate_b) * (iters_b / iters_a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostRule {
    Internal,
    Bridge,
    External,
    Unsupported,
    HeuristicUpperBound,
}

impl CostRule {
    pub fn tag(self) -> &'static str {
        match self {
            CostRule::Internal => "internal",
            CostRule::Bridge => "bridge",
            CostRule::External => "external",
            CostRule::Unsupported => "unsupported",
            CostRule::HeuristicUpperBound => "heuristic-upper-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateCost {
    pub gate_index: usize,
    pub k: u64,
    pub rule: CostRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostReport {
    pub per_gate: Vec<GateCost>,
    pub total: u64,
}

impl CostReport {
    pub fn unsupported(&self) -> impl Iterator<Item = &GateCost> {
        self.per_gate.iter().filter(|g| g.rule == CostRule::Unsupported)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("gate_index,k\n");
        for g in &self.per_gate {
            s.push_str(&format!("{},{}\n", g.gate_index, g.k));
        }
        s.push_str(&format!("total,{}\n", self.total));
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CostOptions {
    /// External qubits have an auxiliary level, enabling the 2x-2+2^{g-n+x} rule.
    pub aux_levels: bool,
    /// Fail on any gate without an exact rule.
    pub strict: bool,
    /// Price unsupported spans with the control-removal upper bound.
    pub heuristic: bool,
}

/// Gate-by-gate physical entangler count of `circuit` under `map`.
pub fn circuit_cost(circuit: &LogicalCircuit, map: &QloqMap, options: CostOptions) -> Result<CostReport> {
    circuit.validate()?;
    if circuit.num_qubits != map.num_qubits() {
        return Err(QloqError::Dimension { expected: map.num_qubits(), got: circuit.num_qubits });
    }
    let mut per_gate = Vec::with_capacity(circuit.gates.len());
    for (i, g) in circuit.gates.iter().enumerate() {
        let support = g.support();
        let carriers = map.carriers_spanned(&support);
        let n = support.len() as u32;
        let gsize = |c: usize| map.size(c) as u32;
        let entry = |k: u64, rule: CostRule, note: Option<String>| GateCost { gate_index: i, k, rule, note };
        let cost = match carriers.len() {
            1 => entry(0, CostRule::Internal, None),
            2 => match g.kind {
                GateKind::Mcx | GateKind::Mcz => {
                    entry(bridge_cost(gsize(carriers[0]), gsize(carriers[1]), n)?, CostRule::Bridge, None)
                }
                GateKind::Swap => entry(
                    3 * bridge_cost(gsize(carriers[0]), gsize(carriers[1]), 2)?,
                    CostRule::Bridge,
                    Some("swap as three CNOTs".into()),
                ),
                _ => {
                    return Err(QloqError::Unsupported(format!(
                        "gate {i}: {} blocks across carriers cannot be costed",
                        g.kind.name()
                    )))
                }
            },
            m => {
                if !matches!(g.kind, GateKind::Mcx | GateKind::Mcz) {
                    return Err(QloqError::Unsupported(format!("gate {i}: {} across {m} carriers", g.kind.name())));
                }
                let count_on = |c: usize| support.iter().filter(|&&q| map.carrier_of(q) == c).count();
                let main = *carriers
                    .iter()
                    .max_by_key(|&&c| (count_on(c), map.size(c), usize::MAX - c))
                    .expect("non-empty");
                let externals_single = carriers.iter().all(|&c| c == main || map.size(c) == 1);
                let x = (m - 1) as u32;
                if externals_single && options.aux_levels {
                    entry(external_cost(gsize(main), n, x)?, CostRule::External, None)
                } else {
                    let why = if externals_single {
                        "external rule needs auxiliary levels".to_string()
                    } else {
                        format!("spans {m} carriers with more than one multi-qubit carrier")
                    };
                    if options.strict {
                        return Err(QloqError::Unsupported(format!("gate {i}: {why}")));
                    }
                    if options.heuristic {
                        let sum: u32 = carriers.iter().map(|&c| gsize(c)).sum();
                        let k = pow2(sum - n)? * (2 * m as u64 - 3);
                        entry(k, CostRule::HeuristicUpperBound, Some(format!("upper bound; {why}")))
                    } else {
                        entry(0, CostRule::Unsupported, Some(why))
                    }
                }
            }
        };
        per_gate.push(cost);
    }
    let total = per_gate.iter().map(|g| g.k).sum();
    Ok(CostReport { per_gate, total })
}
