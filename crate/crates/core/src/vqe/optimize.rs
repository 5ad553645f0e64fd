//! Derivative-free local minimisers: Nelder-Mead and a trust region over
//! linear interpolation models.

use serde::{Deserialize, Serialize};

use crate::error::{QloqError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    NelderMead,
    TrustRegion,
}

impl std::str::FromStr for Method {
    type Err = QloqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nelder-mead" | "simplex" => Ok(Method::NelderMead),
            "trust-region" | "linear-trust-region" => Ok(Method::TrustRegion),
            other => Err(QloqError::Parse(format!("unknown optimizer `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OptimizerConfig {
    pub method: Method,
    /// Maximum objective evaluations.
    pub budget: usize,
    /// Initial simplex edge or trust radius.
    pub step: f64,
    /// Stop once the best value improves by less than `tol` over `patience` iterations.
    pub tol: f64,
    pub patience: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { method: Method::NelderMead, budget: 5000, step: 0.5, tol: 1e-6, patience: 25 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub evaluations: usize,
    pub best: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub trace: Vec<TraceEntry>,
}

struct Counted<F> {
    f: F,
    evals: usize,
    budget: usize,
    best_x: Vec<f64>,
    best: f64,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn call(&mut self, x: &[f64]) -> Option<f64> {
        if self.evals >= self.budget {
            return None;
        }
        self.evals += 1;
        let v = (self.f)(x);
        if v < self.best {
            self.best = v;
            self.best_x = x.to_vec();
        }
        Some(v)
    }
}

struct Stall {
    history: Vec<f64>,
    tol: f64,
    patience: usize,
}

impl Stall {
    fn push(&mut self, best: f64) -> bool {
        self.history.push(best);
        let k = self.history.len();
        k > self.patience && self.history[k - 1 - self.patience] - best < self.tol
    }
}

pub fn minimize<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], config: &OptimizerConfig) -> Result<Minimum> {
    if config.budget == 0 {
        return Err(QloqError::OutOfRange("evaluation budget must be positive".into()));
    }
    if x0.is_empty() {
        return Err(QloqError::OutOfRange("need at least one parameter".into()));
    }
    let mut obj = Counted { f, evals: 0, budget: config.budget, best_x: x0.to_vec(), best: f64::INFINITY };
    let mut stall = Stall { history: Vec::new(), tol: config.tol, patience: config.patience };
    let mut trace = Vec::new();
    let converged = match config.method {
        Method::NelderMead => nelder_mead(&mut obj, x0, config.step, &mut stall, &mut trace),
        Method::TrustRegion => trust_region(&mut obj, x0, config.step, &mut stall, &mut trace),
    };
    Ok(Minimum { x: obj.best_x, value: obj.best, evaluations: obj.evals, converged, trace })
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counted<F>,
    x0: &[f64],
    step: f64,
    stall: &mut Stall,
    trace: &mut Vec<TraceEntry>,
) -> bool {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let Some(v0) = obj.call(x0) else { return false };
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let Some(v) = obj.call(&x) else { return false };
        simplex.push((x, v));
    }
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };
    for it in 0.. {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(TraceEntry { iteration: it, evaluations: obj.evals, best: obj.best });
        if stall.push(obj.best) {
            return true;
        }
        let spread = simplex.iter().map(|s| (s.1 - simplex[0].1).abs()).fold(0.0, f64::max);
        let size = simplex
            .iter()
            .map(|s| s.0.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread < 1e-14 && size < 1e-10 {
            return true;
        }
        let centroid: Vec<f64> = (0..n).map(|k| simplex[..n].iter().map(|s| s.0[k]).sum::<f64>() / n as f64).collect();
        let worst = simplex[n].clone();
        let xr = lerp(&centroid, &worst.0, -1.0);
        let Some(fr) = obj.call(&xr) else { return false };
        if fr < simplex[0].1 {
            let xe = lerp(&centroid, &worst.0, -2.0);
            let Some(fe) = obj.call(&xe) else { return false };
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = lerp(&centroid, &xr, 0.5);
                let Some(fc) = obj.call(&xc) else { return false };
                (xc, fc)
            } else {
                let xc = lerp(&centroid, &worst.0, 0.5);
                let Some(fc) = obj.call(&xc) else { return false };
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for s in simplex.iter_mut().skip(1) {
                    s.0 = lerp(&best, &s.0, 0.5);
                    let Some(v) = obj.call(&s.0) else { return false };
                    s.1 = v;
                }
            }
        }
    }
    unreachable!()
}

fn trust_region<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counted<F>,
    x0: &[f64],
    step: f64,
    stall: &mut Stall,
    trace: &mut Vec<TraceEntry>,
) -> bool {
    let n = x0.len();
    let mut x = x0.to_vec();
    let Some(mut fx) = obj.call(&x) else { return false };
    let mut radius = step;
    for it in 0.. {
        trace.push(TraceEntry { iteration: it, evaluations: obj.evals, best: obj.best });
        if stall.push(obj.best) || radius < 1e-9 {
            return true;
        }
        // linear model through x and x + radius e_i
        let mut grad = vec![0.0; n];
        for i in 0..n {
            let mut y = x.clone();
            y[i] += radius;
            let Some(fy) = obj.call(&y) else { return false };
            grad[i] = (fy - fx) / radius;
        }
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            radius *= 0.5;
            continue;
        }
        let trial: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi - radius * gi / gnorm).collect();
        let Some(ft) = obj.call(&trial) else { return false };
        let predicted = radius * gnorm;
        let ratio = (fx - ft) / predicted;
        if ft < fx {
            x = trial;
            fx = ft;
            if ratio > 0.75 {
                radius *= 2.0;
            }
        } else {
            radius *= 0.5;
        }
        if ratio < 0.25 && ft < fx {
            radius *= 0.5;
        }
    }
    unreachable!()
}
