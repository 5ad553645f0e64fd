//! Partition of logical qubits onto multi-level carriers.

use std::fmt;

use crate::error::{QloqError, Result};

/// Ordered partition of qubits `0..N` into carriers. Carrier `i` holds
/// `g_i` qubits on `2^{g_i}` levels; its level is the big-endian
/// concatenation of its qubits in group order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QloqMap {
    partition: Vec<Vec<usize>>,
    /// carrier and position within the carrier, per qubit
    location: Vec<(usize, usize)>,
    /// contribution of each qubit's bit to the physical index
    weight: Vec<usize>,
    /// stride of each carrier digit in the physical index
    stride: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    CarrierTooLarge { carrier: usize, levels: usize, max_levels: usize },
    EmptyCarrier { carrier: usize },
    Duplicated { qubit: usize },
    Missing { qubit: usize },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::CarrierTooLarge { carrier, levels, max_levels } => {
                write!(f, "carrier {carrier} needs {levels} levels (max {max_levels})")
            }
            MapViolation::EmptyCarrier { carrier } => write!(f, "carrier {carrier} is empty"),
            MapViolation::Duplicated { qubit } => write!(f, "qubit {qubit} duplicated"),
            MapViolation::Missing { qubit } => write!(f, "qubit {qubit} not assigned to any carrier"),
        }
    }
}

/// Check a raw partition against a max qubits-per-carrier `max_g`.
/// Returns every violation found; an empty list means the map is usable.
pub fn validate_map(partition: &[Vec<usize>], max_g: usize) -> Vec<MapViolation> {
    let mut out = Vec::new();
    let n = partition.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let mut seen = vec![0usize; n];
    for (i, group) in partition.iter().enumerate() {
        if group.is_empty() {
            out.push(MapViolation::EmptyCarrier { carrier: i });
        }
        if group.len() > max_g {
            out.push(MapViolation::CarrierTooLarge {
                carrier: i,
                levels: 1 << group.len(),
                max_levels: 1 << max_g,
            });
        }
        for &q in group {
            seen[q] += 1;
        }
    }
    for (q, &count) in seen.iter().enumerate() {
        if count > 1 {
            out.push(MapViolation::Duplicated { qubit: q });
        } else if count == 0 {
            out.push(MapViolation::Missing { qubit: q });
        }
    }
    out
}

impl QloqMap {
    pub fn new(partition: Vec<Vec<usize>>) -> Result<Self> {
        let problems = validate_map(&partition, usize::MAX >> 1);
        if partition.is_empty() {
            return Err(QloqError::InvalidMap("no carriers".into()));
        }
        if let Some(p) = problems.first() {
            return Err(QloqError::InvalidMap(p.to_string()));
        }
        if partition.iter().any(|g| g.len() > 20) {
            return Err(QloqError::InvalidMap("carrier too large to index".into()));
        }
        let n: usize = partition.iter().map(Vec::len).sum();
        let mut location = vec![(0, 0); n];
        for (c, group) in partition.iter().enumerate() {
            for (k, &q) in group.iter().enumerate() {
                location[q] = (c, k);
            }
        }
        let mut stride = vec![1usize; partition.len()];
        for c in (0..partition.len().saturating_sub(1)).rev() {
            stride[c] = stride[c + 1] << partition[c + 1].len();
        }
        let weight = (0..n)
            .map(|q| {
                let (c, k) = location[q];
                stride[c] << (partition[c].len() - 1 - k)
            })
            .collect();
        Ok(QloqMap { partition, location, weight, stride })
    }

    /// Every qubit on its own two-level carrier.
    pub fn qubits(n: usize) -> Self {
        Self::new((0..n).map(|q| vec![q]).collect()).expect("trivial partition")
    }

    /// Consecutive groups of the given sizes, e.g. `[2, 2]` gives (0,1)(2,3).
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        let mut next = 0;
        let mut part = Vec::new();
        for &g in sizes {
            part.push((next..next + g).collect());
            next += g;
        }
        Self::new(part)
    }

    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn num_qubits(&self) -> usize {
        self.location.len()
    }

    pub fn num_carriers(&self) -> usize {
        self.partition.len()
    }

    /// Qubits per carrier, g_i.
    pub fn sizes(&self) -> Vec<usize> {
        self.partition.iter().map(Vec::len).collect()
    }

    pub fn size(&self, carrier: usize) -> usize {
        self.partition[carrier].len()
    }

    /// Level count L_i = 2^{g_i}.
    pub fn levels(&self, carrier: usize) -> usize {
        1 << self.partition[carrier].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.num_carriers()).map(|c| self.levels(c)).collect()
    }

    /// Dimension of the carrier product space.
    pub fn dim(&self) -> usize {
        1 << self.num_qubits()
    }

    pub fn max_g(&self) -> usize {
        self.partition.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// (carrier, position within carrier) of qubit `q`.
    pub fn locate(&self, q: usize) -> (usize, usize) {
        self.location[q]
    }

    pub fn carrier_of(&self, q: usize) -> usize {
        self.location[q].0
    }

    /// Bit weight of qubit `q` within its carrier's level.
    pub fn level_bit(&self, q: usize) -> usize {
        let (c, k) = self.location[q];
        1 << (self.partition[c].len() - 1 - k)
    }

    pub fn stride(&self, carrier: usize) -> usize {
        self.stride[carrier]
    }

    /// Distinct carriers touched by `qubits`, in ascending order.
    pub fn carriers_spanned(&self, qubits: &[usize]) -> Vec<usize> {
        let mut cs: Vec<usize> = qubits.iter().map(|&q| self.carrier_of(q)).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    /// Physical (carrier-major) index of a logical basis state, where the
    /// logical index is big-endian over qubits `0..N`.
    pub fn physical_index(&self, logical: usize) -> usize {
        let n = self.num_qubits();
        let mut p = 0;
        for q in 0..n {
            if (logical >> (n - 1 - q)) & 1 == 1 {
                p += self.weight[q];
            }
        }
        p
    }

    pub fn logical_index(&self, physical: usize) -> usize {
        let n = self.num_qubits();
        let mut l = 0;
        for q in 0..n {
            if physical & self.weight[q] != 0 {
                l |= 1 << (n - 1 - q);
            }
        }
        l
    }

    /// Weight of qubit `q` in the physical index (a power of two).
    pub fn weight(&self, q: usize) -> usize {
        self.weight[q]
    }

    /// Digit (level) of `carrier` in physical index `p`.
    pub fn digit(&self, p: usize, carrier: usize) -> usize {
        (p / self.stride[carrier]) % self.levels(carrier)
    }

    /// `QLOQ(0,1)(2,3)` style label.
    pub fn label(&self) -> String {
        let mut s = String::from("QLOQ");
        for g in &self.partition {
            let inner: Vec<String> = g.iter().map(|q| q.to_string()).collect();
            s.push_str(&format!("({})", inner.join(",")));
        }
        s
    }
}

impl fmt::Display for QloqMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
