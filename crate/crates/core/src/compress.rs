//! How often gate-by-gate compression onto a single carrier pays off.
//!
//! Two questions are answered: whether a random circuit of equal-cost
//! two-qubit gates has any pair worth sharing a 4-level carrier, and the
//! expected cost ratio R of a randomly placed n-qubit CC..CZ when g qubits
//! share one carrier and every other qubit has an auxiliary level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cost::external_cost;
use crate::error::{QloqError, Result};

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Qubits plus one unordered pair per two-qubit gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityMultigraph {
    pub num_qubits: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ConnectivityMultigraph {
    pub fn new(num_qubits: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a == b || a >= num_qubits || b >= num_qubits {
                return Err(QloqError::OutOfRange(format!("edge ({a},{b}) on {num_qubits} qubits")));
            }
        }
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Ok(ConnectivityMultigraph { num_qubits, edges })
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn degree(&self, q: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == q || b == q).count()
    }

    /// True when some pair has more gates between its two qubits than
    /// gates leaving it, so a shared 4-level carrier lowers the cost.
    pub fn is_compressible(&self) -> bool {
        let mut pairs = self.edges.clone();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.iter().any(|&(a, b)| {
            let m = self.multiplicity(a, b);
            m + 2 * m > self.degree(a) + self.degree(b)
        })
    }
}

/// `m` gates on pairs drawn uniformly and independently from all C(N,2) pairs.
pub fn random_circuit(num_qubits: usize, gates: usize, seed: u64) -> Result<ConnectivityMultigraph> {
    random_circuit_with(num_qubits, gates, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_circuit_with<R: Rng>(n: usize, gates: usize, rng: &mut R) -> Result<ConnectivityMultigraph> {
    if n < 2 {
        return Err(QloqError::OutOfRange("need at least 2 qubits".into()));
    }
    let edges = (0..gates)
        .map(|_| {
            let a = rng.random_range(0..n);
            let mut b = rng.random_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    ConnectivityMultigraph::new(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Fraction of random circuits with at least one advantageous pair.
pub fn compressible_fraction(num_qubits: usize, gates: usize, trials: u64, seed: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(QloqError::OutOfRange("trials must be at least 1".into()));
    }
    if num_qubits < 2 {
        return Err(QloqError::OutOfRange("need at least 2 qubits".into()));
    }
    if gates == 1 {
        return Ok(Estimate { value: 1.0, stderr: 0.0, trials });
    }
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = random_circuit_with(num_qubits, gates, &mut trial_rng(seed, t)).expect("validated size");
            g.is_compressible() as u64
        })
        .sum();
    let p = hits as f64 / trials as f64;
    Ok(Estimate { value: p, stderr: (p * (1.0 - p) / trials as f64).sqrt(), trials })
}

/// Carrier size `g`, gate arity `n`, circuit width `big_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RatioQuery {
    pub g: u32,
    pub n: u32,
    pub big_n: u64,
}

impl RatioQuery {
    pub fn new(g: u32, n: u32, big_n: u64) -> Result<Self> {
        if n < 2 || g < 1 {
            return Err(QloqError::OutOfRange(format!("need n >= 2 and g >= 1, got g={g} n={n}")));
        }
        if big_n < n as u64 || big_n < g as u64 + 1 {
            return Err(QloqError::OutOfRange(format!("N={big_n} below max(n, g+1)")));
        }
        Ok(RatioQuery { g, n, big_n })
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Expected cost ratio as an exact rational.
pub fn expected_ratio_exact(q: RatioQuery) -> Result<BigRational> {
    let (g, n, big_n) = (q.g as u64, q.n as u64, q.big_n);
    let s = if n > g { n - g } else { 1 };
    let mut num = BigInt::zero();
    for x in s..n {
        let ways = binomial(g, n - x) * binomial(big_n - g, x);
        if ways.is_zero() {
            continue;
        }
        num += ways * BigInt::from(external_cost(q.g, q.n, x as u32)?);
    }
    let touching = binomial(big_n, n) - binomial(big_n - g, n);
    let den = touching * BigInt::from(2 * n - 3);
    Ok(BigRational::new(num, den))
}

pub fn expected_ratio_closed(q: RatioQuery) -> Result<f64> {
    expected_ratio_exact(q)?
        .to_f64()
        .ok_or_else(|| QloqError::Numerical("ratio not representable".into()))
}

/// Monte Carlo estimate: uniform n-subsets touching the carrier (qubits
/// 0..g), priced by the external rule, over the uncompressed 2n-3.
pub fn expected_ratio_mc(q: RatioQuery, trials: u64, seed: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(QloqError::OutOfRange("trials must be at least 1".into()));
    }
    let big_n = usize::try_from(q.big_n)
        .ok()
        .filter(|&v| v <= 1 << 24)
        .ok_or_else(|| QloqError::OutOfRange("Monte Carlo needs N <= 2^24".into()))?;
    let (g, n) = (q.g as usize, q.n as usize);
    let base = (2 * n - 3) as f64;
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            loop {
                let pick = sample(&mut rng, big_n, n);
                let inside = pick.iter().filter(|&i| i < g).count();
                if inside == 0 {
                    continue;
                }
                let x = (n - inside) as u32;
                let k = if x == 0 { 0 } else { external_cost(q.g, q.n, x).expect("valid split") };
                return k as f64 / base;
            }
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials.max(2) - 1) as f64;
    Ok(Estimate { value: mean, stderr: (var / trials as f64).sqrt(), trials })
}

/// Smallest N in max(n, g+1)..=n_max with R > 1.
pub fn threshold_scan(g: u32, n: u32, n_max: u64) -> Result<Option<u64>> {
    if n_max < n as u64 {
        return Err(QloqError::OutOfRange("N_max below the gate arity".into()));
    }
    let start = (n as u64).max(g as u64 + 1);
    for big_n in start..=n_max {
        if expected_ratio_exact(RatioQuery::new(g, n, big_n)?)? > BigRational::one() {
            return Ok(Some(big_n));
        }
    }
    Ok(None)
}

/// `N,m,fraction,stderr` CSV over a grid of widths and gate counts.
pub fn fraction_csv(widths: &[usize], gate_counts: &[usize], trials: u64, seed: u64) -> Result<String> {
    let mut s = String::from("N,m,fraction,stderr\n");
    for &w in widths {
        for &m in gate_counts {
            let e = compressible_fraction(w, m, trials, seed)?;
            s.push_str(&format!("{w},{m},{},{}\n", e.value, e.stderr));
        }
    }
    Ok(s)
}

/// Grid CSV with rows g and columns n; `cell` renders each entry.
pub fn grid_csv(gs: &[u32], ns: &[u32], mut cell: impl FnMut(u32, u32) -> Result<String>) -> Result<String> {
    let mut s = String::from("g");
    for n in ns {
        s.push_str(&format!(",n={n}"));
    }
    s.push('\n');
    for &g in gs {
        s.push_str(&g.to_string());
        for &n in ns {
            s.push(',');
            s.push_str(&cell(g, n)?);
        }
        s.push('\n');
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubits_one_pair() {
        let g = random_circuit(2, 3, 5).unwrap();
        assert_eq!(g.edges, vec![(0, 1); 3]);
        assert!(random_circuit(4, 0, 1).unwrap().edges.is_empty());
        assert_eq!(random_circuit(6, 20, 3).unwrap(), random_circuit(6, 20, 3).unwrap());
    }

    #[test]
    fn compressibility_examples() {
        let mk = |e: Vec<(usize, usize)>| ConnectivityMultigraph::new(3, e).unwrap().is_compressible();
        assert!(mk(vec![(0, 1)]));
        assert!(!mk(vec![(0, 1), (0, 2)]));
        assert!(mk(vec![(0, 1), (0, 1)]));
        assert!(ConnectivityMultigraph::new(3, vec![(1, 1)]).is_err());
    }

    #[test]
    fn ratio_simplifies_at_g2_n2() {
        for big_n in 3..=20u64 {
            let r = expected_ratio_exact(RatioQuery::new(2, 2, big_n).unwrap()).unwrap();
            let want = BigRational::new(BigInt::from(4 * big_n - 8), BigInt::from(2 * big_n - 3));
            assert_eq!(r, want);
        }
    }

    #[test]
    fn ratio_is_one_without_compression() {
        for n in 2..=9 {
            for big_n in [n as u64 + 1, 30, 1000] {
                let r = expected_ratio_exact(RatioQuery::new(1, n, big_n).unwrap()).unwrap();
                assert_eq!(r, BigRational::one());
            }
        }
    }

    #[test]
    fn large_n_limits() {
        let r = |g, n| expected_ratio_closed(RatioQuery::new(g, n, 1_000_000_000_000).unwrap()).unwrap();
        assert!((r(2, 2) - 2.0).abs() < 1e-9);
        assert!((r(7, 2) - 64.0).abs() < 1e-9);
        assert!((r(3, 4) - 1.6).abs() < 1e-9);
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold_scan(2, 2, 100).unwrap(), Some(3));
        assert_eq!(threshold_scan(2, 3, 100).unwrap(), Some(6));
        assert_eq!(threshold_scan(7, 9, 100).unwrap(), Some(15));
        assert_eq!(threshold_scan(3, 2, 100).unwrap(), Some(4));
        assert_eq!(threshold_scan(1, 4, 60).unwrap(), None);
    }

    #[test]
    fn single_gate_always_compressible() {
        let e = compressible_fraction(7, 1, 10_000, 1).unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn mc_reproducible() {
        let q = RatioQuery::new(2, 3, 6).unwrap();
        assert_eq!(expected_ratio_mc(q, 2000, 4).unwrap(), expected_ratio_mc(q, 2000, 4).unwrap());
        assert_eq!(compressible_fraction(4, 5, 500, 2).unwrap(), compressible_fraction(4, 5, 500, 2).unwrap());
    }

    #[test]
    fn invalid_queries() {
        assert!(RatioQuery::new(2, 1, 5).is_err());
        assert!(RatioQuery::new(4, 2, 4).is_err());
        assert!(compressible_fraction(3, 2, 0, 1).is_err());
    }
}
