//! Scalar losses with closed-form gradients.

use crate::error::{Error, Result};
use crate::nn::mat::dot;

/// InfoNCE loss for one query: -log( exp(x.x+/tau) / (exp(x.x+/tau) +
/// sum_i exp(x.x-_i/tau)) ), guarded by max-subtraction. Returns gradients
/// with respect to the query, the positive, and each negative.
pub struct InfoNce {
    pub loss: f64,
    pub d_x: Vec<f64>,
    pub d_pos: Vec<f64>,
    pub d_negs: Vec<Vec<f64>>,
}

pub fn info_nce(x: &[f64], x_plus: &[f64], negatives: &[Vec<f64>], tau: f64) -> Result<InfoNce> {
    if tau <= 0.0 {
        return Err(Error::Validation(format!("tau must be positive, got {tau}")));
    }
    if x.len() != x_plus.len() || negatives.iter().any(|n| n.len() != x.len()) {
        return Err(Error::DimMismatch {
            expected: x.len(),
            got: x_plus.len(),
        });
    }
    let l_pos = dot(x, x_plus) / tau;
    let l_negs: Vec<f64> = negatives.iter().map(|n| dot(x, n) / tau).collect();
    let m = l_negs.iter().cloned().fold(l_pos, f64::max);
    let z = (l_pos - m).exp() + l_negs.iter().map(|&l| (l - m).exp()).sum::<f64>();
    let lse = m + z.ln();
    let loss = lse - l_pos;

    let s_pos = (l_pos - lse).exp();
    let s_negs: Vec<f64> = l_negs.iter().map(|&l| (l - lse).exp()).collect();

    let mut d_x = vec![0.0; x.len()];
    let d_l_pos = s_pos - 1.0;
    for (o, &v) in d_x.iter_mut().zip(x_plus.iter()) {
        *o += d_l_pos * v / tau;
    }
    for (neg, &s) in negatives.iter().zip(s_negs.iter()) {
        for (o, &v) in d_x.iter_mut().zip(neg.iter()) {
            *o += s * v / tau;
        }
    }
    let d_pos: Vec<f64> = x.iter().map(|&v| d_l_pos * v / tau).collect();
    let d_negs: Vec<Vec<f64>> = s_negs
        .iter()
        .map(|&s| x.iter().map(|&v| s * v / tau).collect())
        .collect();
    Ok(InfoNce {
        loss,
        d_x,
        d_pos,
        d_negs,
    })
}

/// Softmax cross-entropy for a 1-based class label.
pub fn cross_entropy(logits: &[f64], label: usize) -> Result<(f64, Vec<f64>)> {
    if label == 0 || label > logits.len() {
        return Err(Error::Validation(format!(
            "label {label} outside 1..={}",
            logits.len()
        )));
    }
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let z: f64 = logits.iter().map(|&l| (l - m).exp()).sum();
    let lse = m + z.ln();
    let loss = lse - logits[label - 1];
    let mut grad: Vec<f64> = logits.iter().map(|&l| (l - lse).exp()).collect();
    grad[label - 1] -= 1.0;
    Ok((loss, grad))
}

/// Ordinal regression target: with K classes, class i maps to a K-vector
/// with ones in the first i slots.
pub fn ordinal_target(k: usize, label: usize) -> Vec<f64> {
    (1..=k).map(|j| if j <= label { 1.0 } else { 0.0 }).collect()
}

/// Mean squared error between sigmoid outputs and the ordinal target.
pub fn ordinal_loss(pred: &[f64], label: usize) -> Result<(f64, Vec<f64>)> {
    if label == 0 || label > pred.len() {
        return Err(Error::Validation(format!(
            "label {label} outside 1..={}",
            pred.len()
        )));
    }
    let target = ordinal_target(pred.len(), label);
    let k = pred.len() as f64;
    let mut loss = 0.0;
    let mut grad = vec![0.0; pred.len()];
    for (i, (&p, &t)) in pred.iter().zip(target.iter()).enumerate() {
        loss += (p - t) * (p - t) / k;
        grad[i] = 2.0 * (p - t) / k;
    }
    Ok((loss, grad))
}

pub fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Numerically stable binary cross-entropy on a logit. Returns (loss, dz).
pub fn bce_with_logit(z: f64, y: f64) -> (f64, f64) {
    let loss = z.max(0.0) - z * y + (1.0 + (-z.abs()).exp()).ln();
    (loss, sigmoid(z) - y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_nce_uniform_similarities() {
        // all dot products equal -> softmax uniform over k+2 entries
        let x = vec![0.5, 0.5];
        let pos = vec![0.3, 0.3];
        let negs = vec![vec![0.3, 0.3]; 5];
        let r = info_nce(&x, &pos, &negs, 0.7).unwrap();
        assert!((r.loss - (7.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn info_nce_dominant_positive_vanishes() {
        let x = vec![30.0, 0.0];
        let pos = vec![30.0, 0.0];
        let negs = vec![vec![0.0, 0.1]];
        let r = info_nce(&x, &pos, &negs, 1.0).unwrap();
        assert!(r.loss < 1e-12);
    }

    #[test]
    fn info_nce_unit_vector_example() {
        let x = vec![1.0, 0.0];
        let pos = vec![1.0, 0.0];
        let negs = vec![vec![0.0, 1.0]];
        let r = info_nce(&x, &pos, &negs, 0.1).unwrap();
        let expect = (1.0 + (-10.0f64).exp()).ln();
        assert!((r.loss - expect).abs() < 1e-12);
    }

    #[test]
    fn info_nce_decreases_in_positive_similarity() {
        let negs = vec![vec![0.1, 0.4]];
        let mut prev = f64::INFINITY;
        for t in 0..5 {
            let pos = vec![0.2 * t as f64, 0.0];
            let r = info_nce(&[1.0, 0.0], &pos, &negs, 0.5).unwrap();
            assert!(r.loss < prev);
            prev = r.loss;
        }
    }

    #[test]
    fn info_nce_gradient_matches_finite_difference() {
        let x = vec![0.4, -0.7, 0.2];
        let pos = vec![0.1, 0.3, -0.2];
        let negs = vec![vec![0.9, 0.0, 0.3], vec![-0.4, 0.5, 0.1]];
        let r = info_nce(&x, &pos, &negs, 0.3).unwrap();
        let eps = 1e-6;
        for i in 0..x.len() {
            let mut xp = x.clone();
            xp[i] += eps;
            let mut xm = x.clone();
            xm[i] -= eps;
            let num = (info_nce(&xp, &pos, &negs, 0.3).unwrap().loss
                - info_nce(&xm, &pos, &negs, 0.3).unwrap().loss)
                / (2.0 * eps);
            assert!((num - r.d_x[i]).abs() < 1e-7);
        }
        for i in 0..pos.len() {
            let mut pp = pos.clone();
            pp[i] += eps;
            let mut pm = pos.clone();
            pm[i] -= eps;
            let num = (info_nce(&x, &pp, &negs, 0.3).unwrap().loss
                - info_nce(&x, &pm, &negs, 0.3).unwrap().loss)
                / (2.0 * eps);
            assert!((num - r.d_pos[i]).abs() < 1e-7);
        }
    }

    #[test]
    fn cross_entropy_perfect_logits_vanish() {
        let (loss, _) = cross_entropy(&[100.0, 0.0, 0.0], 1).unwrap();
        assert!(loss < 1e-12);
    }

    #[test]
    fn ordinal_target_class_two_of_four() {
        assert_eq!(ordinal_target(4, 2), vec![1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn ordinal_loss_zero_at_target() {
        let (loss, _) = ordinal_loss(&[1.0, 1.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(loss, 0.0);
    }

    #[test]
    fn bce_matches_naive_formula() {
        for &(z, y) in &[(0.3, 1.0), (-2.0, 0.0), (5.0, 1.0), (-0.1, 1.0)] {
            let (loss, dz) = bce_with_logit(z, y);
            let p = sigmoid(z);
            let naive = -(y * p.ln() + (1.0 - y) * (1.0 - p).ln());
            assert!((loss - naive).abs() < 1e-12);
            assert!((dz - (p - y)).abs() < 1e-12);
        }
    }
}
