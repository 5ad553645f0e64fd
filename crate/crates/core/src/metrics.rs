//! Expressibility and entangling capability of parameterized circuits.
//!
//! Expressibility is the KL divergence between the fidelity histogram of
//! random parameter pairs and the Haar fidelity distribution; entangling
//! capability is the mean Meyer-Wallach measure over random parameters.
//! Parameters are drawn uniformly from [0, 2pi) and circuits start in |0..0>.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{builtin_fixture, LogicalCircuit};
use crate::error::{QloqError, Result};
use crate::sim::compile::{compile, CompileOptions};
use crate::sim::sample::multinomial;
use crate::sim::state::{apply_logical_gate, qubit_purity};

pub const DEFAULT_BINS: usize = 75;
pub const DEFAULT_PAIRS: usize = 5000;
pub const DEFAULT_ENT_SAMPLES: usize = 1000;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar probability of each of `bins` equal fidelity bins in dimension `d`:
/// (1 - F_j)^{d-1} - (1 - F_{j+1})^{d-1}.
pub fn haar_bin_probs(d: usize, bins: usize) -> Result<Vec<f64>> {
    if d < 2 || bins == 0 {
        return Err(QloqError::OutOfRange(format!("need d >= 2 and bins >= 1, got d={d} bins={bins}")));
    }
    let tail = |j: usize| (1.0 - j as f64 / bins as f64).powi(d as i32 - 1);
    Ok((0..bins).map(|j| tail(j) - tail(j + 1)).collect())
}

/// Output state of `circuit` on |0..0>.
pub fn output_state(circuit: &LogicalCircuit) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << circuit.num_qubits];
    amps[0] = C64::new(1.0, 0.0);
    for g in &circuit.gates {
        apply_logical_gate(&mut amps, circuit.num_qubits, g);
    }
    amps
}

fn random_state(template: &LogicalCircuit, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let params: Vec<f64> = (0..template.rotation_count()).map(|_| rng.random_range(0.0..TAU)).collect();
    output_state(&template.bind_parameters(&params).expect("parameter count matches"))
}

pub fn fidelity(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr()
}

pub fn bin_of(f: f64, bins: usize) -> usize {
    ((f * bins as f64) as usize).min(bins - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityHistogram {
    pub counts: Vec<u64>,
    pub pairs: u64,
}

impl FidelityHistogram {
    pub fn from_fidelities(fs: &[f64], bins: usize) -> Self {
        let mut counts = vec![0u64; bins];
        for &f in fs {
            counts[bin_of(f, bins)] += 1;
        }
        FidelityHistogram { counts, pairs: fs.len() as u64 }
    }

    /// KL divergence from the Haar distribution in dimension `d`.
    pub fn kl_to_haar(&self, d: usize) -> Result<f64> {
        let haar = haar_bin_probs(d, self.counts.len())?;
        kl(&self.counts, self.pairs, &haar)
    }
}

fn kl(counts: &[u64], total: u64, haar: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for (&c, &p) in counts.iter().zip(haar) {
        if c == 0 {
            continue;
        }
        if p <= 0.0 {
            return Err(QloqError::Numerical("empirical mass in a zero-probability Haar bin".into()));
        }
        let q = c as f64 / total as f64;
        s += q * (q / p).ln();
    }
    Ok(s)
}

/// Fidelities of `pairs` random parameter pairs.
pub fn sample_fidelities(template: &LogicalCircuit, pairs: usize, seed: u64) -> Vec<f64> {
    (0..pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let a = random_state(template, &mut rng);
            let b = random_state(template, &mut rng);
            fidelity(&a, &b)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Mean of `repeats` independent expressibility estimates (seeds `seed..seed+repeats`).
pub fn expressibility_mean(template: &LogicalCircuit, pairs: usize, bins: usize, seed: u64, repeats: u64) -> Result<MetricEstimate> {
    if repeats == 0 {
        return Err(QloqError::OutOfRange("repeats must be at least 1".into()));
    }
    let vals = (seed..seed + repeats)
        .map(|s| expressibility(template, pairs, bins, s).map(|e| e.value))
        .collect::<Result<Vec<f64>>>()?;
    let mean = vals.iter().sum::<f64>() / repeats as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (repeats.max(2) - 1) as f64;
    Ok(MetricEstimate { value: mean, stderr: (var / repeats as f64).sqrt() })
}

pub fn expressibility(template: &LogicalCircuit, pairs: usize, bins: usize, seed: u64) -> Result<MetricEstimate> {
    if pairs == 0 {
        return Err(QloqError::OutOfRange("pairs must be at least 1".into()));
    }
    let hist = FidelityHistogram::from_fidelities(&sample_fidelities(template, pairs, seed), bins);
    let d = 1usize << template.num_qubits;
    let value = hist.kl_to_haar(d)?;
    Ok(MetricEstimate { value, stderr: bootstrap_stderr(&hist, d, seed)? })
}

/// Bootstrap standard error of the KL estimate by resampling the histogram.
fn bootstrap_stderr(hist: &FidelityHistogram, d: usize, seed: u64) -> Result<f64> {
    const ROUNDS: usize = 200;
    let haar = haar_bin_probs(d, hist.counts.len())?;
    let probs: Vec<f64> = hist.counts.iter().map(|&c| c as f64 / hist.pairs as f64).collect();
    let mut rng = stream_rng(seed, u64::MAX);
    let mut vals = Vec::with_capacity(ROUNDS);
    for _ in 0..ROUNDS {
        let counts = multinomial(&probs, hist.pairs, &mut rng);
        vals.push(kl(&counts, hist.pairs, &haar)?);
    }
    let mean = vals.iter().sum::<f64>() / ROUNDS as f64;
    Ok((vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (ROUNDS - 1) as f64).sqrt())
}

/// Expressibility of Haar-random states themselves; only finite-sample bias remains.
pub fn haar_expressibility(num_qubits: usize, pairs: usize, bins: usize, seed: u64) -> Result<f64> {
    let d = 1usize << num_qubits;
    let fs: Vec<f64> = (0..pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let mut draw = || -> Vec<C64> {
                let v: Vec<C64> = (0..d)
                    .map(|_| {
                        C64::new(rng.sample(rand_distr::StandardNormal), rng.sample(rand_distr::StandardNormal))
                    })
                    .collect();
                let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.into_iter().map(|z| z / n).collect()
            };
            let (a, b) = (draw(), draw());
            fidelity(&a, &b)
        })
        .collect();
    FidelityHistogram::from_fidelities(&fs, bins).kl_to_haar(d)
}

/// Q = 2(1 - mean single-qubit purity).
pub fn meyer_wallach(amps: &[C64], num_qubits: usize) -> Result<f64> {
    if amps.len() != 1 << num_qubits || num_qubits == 0 {
        return Err(QloqError::Dimension { expected: 1 << num_qubits, got: amps.len() });
    }
    let mean = (0..num_qubits).map(|j| qubit_purity(amps, num_qubits, j)).sum::<f64>() / num_qubits as f64;
    let q = 2.0 * (1.0 - mean);
    // product states give purities of 1 up to rounding
    Ok(if q < 1e-12 { 0.0 } else { q })
}

pub fn entangling_capability(template: &LogicalCircuit, samples: usize, seed: u64) -> Result<MetricEstimate> {
    if samples == 0 {
        return Err(QloqError::OutOfRange("samples must be at least 1".into()));
    }
    let n = template.num_qubits;
    let qs: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let amps = random_state(template, &mut stream_rng(seed ^ 0x5EED, i));
            meyer_wallach(&amps, n).expect("state sized by the circuit")
        })
        .collect();
    let mean = qs.iter().sum::<f64>() / samples as f64;
    let var = qs.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / (samples.max(2) - 1) as f64;
    Ok(MetricEstimate { value: mean, stderr: (var / samples as f64).sqrt() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub id: String,
    pub entanglers: usize,
    pub params: usize,
    pub expr: f64,
    pub expr_stderr: f64,
    pub ent: f64,
    pub ent_stderr: f64,
}

pub fn benchmark_sweep(names: &[&str], pairs: usize, samples: usize, seed: u64) -> Result<Vec<BenchmarkRow>> {
    names
        .iter()
        .map(|name| {
            let f = builtin_fixture(name)?;
            let pc = compile(&f.circuit, &f.map, CompileOptions { style: f.style })?;
            let expr = expressibility(&f.circuit, pairs, DEFAULT_BINS, seed)?;
            let ent = entangling_capability(&f.circuit, samples, seed)?;
            Ok(BenchmarkRow {
                id: name.to_string(),
                entanglers: pc.entangler_count(),
                params: f.circuit.rotation_count(),
                expr: expr.value,
                expr_stderr: expr.stderr,
                ent: ent.value,
                ent_stderr: ent.stderr,
            })
        })
        .collect()
}

pub fn benchmark_csv(rows: &[BenchmarkRow]) -> String {
    let mut s = String::from("id,entanglers,params,expr,expr_stderr,ent,ent_stderr\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{:.4},{:.4},{:.4},{:.4}\n",
            r.id, r.entanglers, r.params, r.expr, r.expr_stderr, r.ent, r.ent_stderr
        ));
    }
    s
}
