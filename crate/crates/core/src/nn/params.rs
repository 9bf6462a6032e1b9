//! Parameter plumbing shared by every model: a visitor over named matrices,
//! the Adam optimiser, polyak averaging, checkpoints, and finite-difference
//! gradient checking.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nn::mat::Mat;

/// A model's parameters as an ordered set of named matrices. Gradients are
/// carried in a second instance of the same type, so shapes always line up.
pub trait Params: Clone {
    fn visit<'a>(&'a self, f: &mut dyn FnMut(&str, &'a Mat));
    fn visit_mut<'a>(&'a mut self, f: &mut dyn FnMut(&str, &'a mut Mat));

    fn zeroed(&self) -> Self {
        let mut copy = self.clone();
        copy.visit_mut(&mut |_, m| m.fill(0.0));
        copy
    }

    fn mats<'a>(&'a self) -> Vec<&'a Mat> {
        let mut out = Vec::new();
        self.visit(&mut |_, m| out.push(m));
        out
    }

    fn mats_mut<'a>(&'a mut self) -> Vec<&'a mut Mat> {
        let mut out = Vec::new();
        self.visit_mut(&mut |_, m| out.push(m));
        out
    }

    /// self += s * other, matrix by matrix.
    fn add_scaled(&mut self, other: &Self, s: f64) {
        let theirs = other.mats();
        for (i, m) in self.mats_mut().into_iter().enumerate() {
            m.add_scaled(theirs[i], s);
        }
    }

    fn scale(&mut self, s: f64) {
        self.visit_mut(&mut |_, m| m.scale(s));
    }

    fn flat_len(&self) -> usize {
        self.mats().iter().map(|m| m.len()).sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AdamHyper {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamHyper {
    pub fn with_lr(lr: f64) -> Self {
        AdamHyper {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// First/second moment buffers, aligned with the visit order of the model.
#[derive(Debug, Clone, Default)]
pub struct AdamState {
    step: u64,
    m: Vec<Mat>,
    v: Vec<Mat>,
}

impl AdamState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }
}

/// One bias-corrected Adam update.
pub fn adam_step<P: Params>(params: &mut P, grads: &P, state: &mut AdamState, hp: &AdamHyper) {
    let gmats = grads.mats();
    if state.m.is_empty() {
        state.m = gmats.iter().map(|g| Mat::zeros(g.rows(), g.cols())).collect();
        state.v = state.m.clone();
    }
    state.step += 1;
    let t = state.step as i32;
    let bc1 = 1.0 - hp.beta1.powi(t);
    let bc2 = 1.0 - hp.beta2.powi(t);
    for (i, p) in params.mats_mut().into_iter().enumerate() {
        let g = gmats[i];
        let m = &mut state.m[i];
        let v = &mut state.v[i];
        for k in 0..g.len() {
            let gk = g.data()[k];
            m.data_mut()[k] = hp.beta1 * m.data()[k] + (1.0 - hp.beta1) * gk;
            v.data_mut()[k] = hp.beta2 * v.data()[k] + (1.0 - hp.beta2) * gk * gk;
            let m_hat = m.data()[k] / bc1;
            let v_hat = v.data()[k] / bc2;
            p.data_mut()[k] -= hp.lr * m_hat / (v_hat.sqrt() + hp.eps);
        }
    }
}

/// theta_target <- (1 - rho) theta_target + rho theta_online
pub fn polyak_update<P: Params>(target: &mut P, online: &P, rho: f64) {
    let source = online.mats();
    for (i, t) in target.mats_mut().into_iter().enumerate() {
        for k in 0..t.len() {
            t.data_mut()[k] = (1.0 - rho) * t.data()[k] + rho * source[i].data()[k];
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TensorDump {
    name: String,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    version: u32,
    tensors: Vec<TensorDump>,
}

/// Writes a versioned JSON tensor dump. f64 values round-trip exactly.
pub fn save_params<P: Params>(params: &P, path: &Path) -> Result<()> {
    let mut tensors = Vec::new();
    params.visit(&mut |name, m| {
        tensors.push(TensorDump {
            name: name.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().to_vec(),
        });
    });
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer(file, &CheckpointFile { version: 1, tensors })?;
    Ok(())
}

/// Loads a checkpoint into an existing parameter struct of matching layout.
pub fn load_params<P: Params>(params: &mut P, path: &Path) -> Result<()> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let dump: CheckpointFile = serde_json::from_reader(file)?;
    if dump.version != 1 {
        return Err(Error::Validation(format!(
            "unsupported checkpoint version {}",
            dump.version
        )));
    }
    let mut by_name: HashMap<String, TensorDump> = dump
        .tensors
        .into_iter()
        .map(|t| (t.name.clone(), t))
        .collect();
    let mut err: Option<Error> = None;
    params.visit_mut(&mut |name, m| {
        if err.is_some() {
            return;
        }
        match by_name.remove(name) {
            Some(t) if t.rows == m.rows() && t.cols == m.cols() => {
                m.data_mut().copy_from_slice(&t.data);
            }
            Some(t) => {
                err = Some(Error::Validation(format!(
                    "checkpoint tensor {name} has shape {}x{}, expected {}x{}",
                    t.rows,
                    t.cols,
                    m.rows(),
                    m.cols()
                )));
            }
            None => {
                err = Some(Error::Validation(format!(
                    "checkpoint is missing tensor {name}"
                )));
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    if !by_name.is_empty() {
        let extra: Vec<String> = by_name.keys().cloned().collect();
        return Err(Error::Validation(format!(
            "checkpoint has unexpected tensors: {}",
            extra.join(", ")
        )));
    }
    Ok(())
}

/// Central-difference check of `analytic` against `f`, coordinate by
/// coordinate. Returns the largest relative error.
pub fn grad_check<P, F>(f: F, params: &P, analytic: &P, eps: f64) -> f64
where
    P: Params,
    F: Fn(&P) -> f64,
{
    let n_mats = params.mats().len();
    let mut worst = 0.0f64;
    for mi in 0..n_mats {
        let len = params.mats()[mi].len();
        for k in 0..len {
            let mut plus = params.clone();
            plus.mats_mut()[mi].data_mut()[k] += eps;
            let mut minus = params.clone();
            minus.mats_mut()[mi].data_mut()[k] -= eps;
            let numeric = (f(&plus) - f(&minus)) / (2.0 * eps);
            let ana = analytic.mats()[mi].data()[k];
            let rel = if numeric.abs() < 1e-7 && ana.abs() < 1e-7 {
                0.0
            } else {
                (numeric - ana).abs() / numeric.abs().max(ana.abs())
            };
            worst = worst.max(rel);
        }
    }
    worst
}
