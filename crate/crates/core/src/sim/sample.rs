use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::state::MixedRadixState;
use crate::error::{QloqError, Result};

/// Multinomial draw of `shots` outcomes from `probs`, done as a chain of
/// conditional binomials so the cost is independent of the shot count.
pub fn multinomial<R: rand::Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut left = shots;
    let mut mass: f64 = probs.iter().sum();
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() || mass <= p {
            counts[i] = left;
            break;
        }
        let q = (p / mass).clamp(0.0, 1.0);
        let k = if q <= 0.0 {
            0
        } else if q >= 1.0 {
            left
        } else {
            Binomial::new(left, q).expect("valid binomial").sample(rng)
        };
        counts[i] = k;
        left -= k;
        mass -= p;
    }
    counts
}

/// Histogram of logical bitstrings measured from `state`, deterministic for a fixed seed.
pub fn sample(state: &MixedRadixState, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
    if shots == 0 {
        return Err(QloqError::OutOfRange("shots must be at least 1".into()));
    }
    let n = state.map().num_qubits();
    let probs: Vec<f64> = state.logical_amplitudes().iter().map(|a| a.norm_sqr()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = multinomial(&probs, shots, &mut rng);
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (format!("{i:0n$b}"), c))
        .collect())
}

/// `bitstring,count` CSV.
pub fn histogram_csv(h: &BTreeMap<String, u64>) -> String {
    let mut s = String::from("bitstring,count\n");
    for (k, v) in h {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}
