//! From-scratch training of bias-free ReLU/softmax networks with plain SGD,
//! IDX ingestion and seeded population generation.
//!
//! Inputs are row vectors; a layer computes `X * W`. Everything is `f64`.

mod dataset;
mod population;

pub use dataset::{
    load_idx, parse_idx_images, parse_idx_labels, Dataset, PixelScaling, Split, IMAGE_MAGIC, IMAGE_SIDE, LABEL_MAGIC,
    NUM_CLASSES,
};
pub use population::{
    generate_population, model_file, read_manifest, write_manifest, ManifestEntry, PopulationConfig, Status, MANIFEST_FILE,
};

use nalgebra::DMatrix;
use rand::distr::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LayeredNetwork, NetworkMeta};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub arch: Vec<usize>,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub init_half_range: f64,
    /// Seed of the per-epoch shuffle, shared by a whole population.
    pub data_seed: u64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        TrainingConfig {
            arch: vec![784, 200, 100, 10],
            learning_rate: 0.01,
            batch_size: 100,
            epochs: 30,
            init_half_range: 0.9,
            data_seed: 0,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.arch.len() < 2 || self.arch.contains(&0) {
            return Err(Error::InvalidArgument(format!("invalid architecture {:?}", self.arch)));
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidArgument(format!("learning rate {} must be finite and >= 0", self.learning_rate)));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch size must be at least 1".into()));
        }
        if !(self.init_half_range > 0.0 && self.init_half_range.is_finite()) {
            return Err(Error::InvalidArgument(format!("init half range {} must be positive", self.init_half_range)));
        }
        Ok(())
    }
}

/// Every weight i.i.d. uniform on `[-half_range, half_range]`, drawn layer by
/// layer in row-major order from ChaCha8 seeded with `seed`.
pub fn init_network(arch: &[usize], seed: u64, half_range: f64) -> Result<LayeredNetwork> {
    if !(half_range > 0.0 && half_range.is_finite()) {
        return Err(Error::InvalidArgument(format!("init half range {half_range} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new_inclusive(-half_range, half_range).expect("valid range");
    let mut net = LayeredNetwork::constant(arch, 0.0)?;
    for w in net.weights_mut() {
        for r in 0..w.nrows() {
            for c in 0..w.ncols() {
                w[(r, c)] = dist.sample(&mut rng);
            }
        }
    }
    net.meta = NetworkMeta::untrained(seed);
    Ok(net)
}

fn relu_in_place(m: &mut DMatrix<f64>) {
    m.apply(|v| *v = v.max(0.0));
}

fn softmax_rows(z: &DMatrix<f64>) -> DMatrix<f64> {
    let mut p = z.clone();
    for mut row in p.row_iter_mut() {
        let max = row.max();
        row.apply(|v| *v = (*v - max).exp());
        let sum = row.sum();
        row /= sum;
    }
    p
}

/// Activations of every layer; the last entry holds the pre-softmax logits.
fn activations(net: &LayeredNetwork, x: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let mut acts = Vec::with_capacity(net.depth() + 1);
    acts.push(x.clone());
    for (a, w) in net.weights().iter().enumerate() {
        let mut z = &acts[a] * w;
        if a + 1 < net.depth() {
            relu_in_place(&mut z);
        }
        acts.push(z);
    }
    acts
}

fn check_input(net: &LayeredNetwork, x: &DMatrix<f64>) -> Result<()> {
    if x.ncols() != net.arch()[0] {
        return Err(Error::InvalidArgument(format!(
            "batch has {} columns, network expects {}",
            x.ncols(),
            net.arch()[0]
        )));
    }
    Ok(())
}

/// Class probabilities, one row per sample.
pub fn forward(net: &LayeredNetwork, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_input(net, x)?;
    let logits = activations(net, x).pop().expect("at least one layer");
    if logits.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite activation in forward pass".into()));
    }
    Ok(softmax_rows(&logits))
}

/// Index of the row maximum; ties go to the lowest class.
pub fn argmax(row: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in row.into_iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Mean cross-entropy of a batch and the gradient for every weight matrix.
#[derive(Debug, Clone)]
pub struct Gradient {
    pub loss: f64,
    pub correct: usize,
    pub weights: Vec<DMatrix<f64>>,
}

pub fn gradient(net: &LayeredNetwork, x: &DMatrix<f64>, labels: &[u8]) -> Result<Gradient> {
    check_input(net, x)?;
    if labels.len() != x.nrows() || x.nrows() == 0 {
        return Err(Error::InvalidArgument(format!("{} labels for {} samples", labels.len(), x.nrows())));
    }
    let classes = *net.arch().last().expect("arch");
    if let Some(l) = labels.iter().find(|&&l| l as usize >= classes) {
        return Err(Error::InvalidArgument(format!("label {l} but only {classes} outputs")));
    }
    let b = x.nrows() as f64;
    let mut acts = activations(net, x);
    let logits = acts.pop().expect("logits");
    let mut loss = 0.0;
    let mut correct = 0;
    for (r, &y) in labels.iter().enumerate() {
        let row = logits.row(r);
        let max = row.max();
        let lse = max + row.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
        loss += lse - row[y as usize];
        if argmax(row.iter().copied()) == y as usize {
            correct += 1;
        }
    }
    let mut delta = softmax_rows(&logits);
    for (r, &y) in labels.iter().enumerate() {
        delta[(r, y as usize)] -= 1.0;
    }
    delta /= b;
    let mut grads = vec![DMatrix::zeros(0, 0); net.depth()];
    for a in (0..net.depth()).rev() {
        grads[a] = acts[a].transpose() * &delta;
        if a > 0 {
            let mut back = &delta * net.weights()[a].transpose();
            back.zip_apply(&acts[a], |d, h| {
                if h <= 0.0 {
                    *d = 0.0;
                }
            });
            delta = back;
        }
    }
    Ok(Gradient { loss: loss / b, correct, weights: grads })
}

/// One SGD step: `W -= lr * dL/dW`.
pub fn sgd_step(net: &mut LayeredNetwork, grad: &Gradient, lr: f64) {
    for (w, g) in net.weights_mut().iter_mut().zip(&grad.weights) {
        *w -= g * lr;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochStats {
    pub epoch: usize,
    /// Sample-weighted mean batch loss, measured before each update.
    pub loss: f64,
    pub accuracy: f64,
}

/// Trains `net` in place. Batches follow a permutation drawn afresh each
/// epoch from a ChaCha8 stream seeded with `cfg.data_seed`.
pub fn train(net: &mut LayeredNetwork, data: &Dataset, cfg: &TrainingConfig) -> Result<Vec<EpochStats>> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::InvalidArgument("empty training set".into()));
    }
    if data.dim() != net.arch()[0] {
        return Err(Error::InvalidArgument(format!(
            "samples have {} values, network expects {}",
            data.dim(),
            net.arch()[0]
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.data_seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut history = Vec::with_capacity(cfg.epochs);
    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        let (mut loss, mut correct) = (0.0, 0);
        for chunk in order.chunks(cfg.batch_size) {
            let x = data.batch(chunk);
            let labels: Vec<u8> = chunk.iter().map(|&i| data.labels()[i]).collect();
            let g = gradient(net, &x, &labels)?;
            if !g.loss.is_finite() || g.weights.iter().any(|w| w.iter().any(|v| !v.is_finite())) {
                return Err(Error::Diverged { epoch, message: format!("loss became {}", g.loss) });
            }
            loss += g.loss * chunk.len() as f64;
            correct += g.correct;
            sgd_step(net, &g, cfg.learning_rate);
        }
        if net.weights().iter().any(|w| w.iter().any(|v| !v.is_finite())) {
            return Err(Error::Diverged { epoch, message: "non-finite weight".into() });
        }
        history.push(EpochStats {
            epoch,
            loss: loss / data.len() as f64,
            accuracy: correct as f64 / data.len() as f64,
        });
    }
    Ok(history)
}

/// Fraction of samples whose argmax prediction equals the label.
pub fn evaluate(net: &LayeredNetwork, data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("empty evaluation set".into()));
    }
    let idx: Vec<usize> = (0..data.len()).collect();
    let mut correct = 0;
    for chunk in idx.chunks(1000) {
        let logits = activations(net, &data.batch(chunk)).pop().expect("logits");
        for (r, &i) in chunk.iter().enumerate() {
            if argmax(logits.row(r).iter().copied()) == data.labels()[i] as usize {
                correct += 1;
            }
        }
    }
    Ok(correct as f64 / data.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_give_uniform_output() {
        let net = LayeredNetwork::constant(&[4, 3, 10], 0.0).unwrap();
        let p = forward(&net, &DMatrix::from_element(2, 4, 0.7)).unwrap();
        assert!(p.iter().all(|v| (v - 0.1).abs() < 1e-15));
    }

    #[test]
    fn init_is_deterministic_and_sized() {
        let a = init_network(&[784, 200, 100, 10], 5, 0.9).unwrap();
        let b = init_network(&[784, 200, 100, 10], 5, 0.9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.synapse_count(), 177_800);
        assert_ne!(a, init_network(&[784, 200, 100, 10], 6, 0.9).unwrap());
    }

    #[test]
    fn zero_learning_rate_keeps_weights() {
        let mut net = init_network(&[3, 4, 2], 1, 0.5).unwrap();
        let before = net.clone();
        let data = Dataset::from_real(3, vec![0.1, 0.2, 0.3, 0.9, 0.1, 0.0], vec![0, 1], Split::Train).unwrap();
        let cfg = TrainingConfig { arch: vec![3, 4, 2], learning_rate: 0.0, batch_size: 1, epochs: 3, ..Default::default() };
        train(&mut net, &data, &cfg).unwrap();
        assert_eq!(net.weights(), before.weights());
    }

    #[test]
    fn argmax_ties_low() {
        assert_eq!(argmax([0.2, 0.5, 0.5]), 1);
        assert_eq!(argmax([0.0; 10]), 0);
    }

    #[test]
    fn divergence_is_reported() {
        let mut net = init_network(&[2, 2], 1, 0.5).unwrap();
        let data = Dataset::from_real(2, vec![1e200, -1e200], vec![0], Split::Train).unwrap();
        let cfg = TrainingConfig { arch: vec![2, 2], learning_rate: 1e200, batch_size: 1, epochs: 3, ..Default::default() };
        assert!(matches!(train(&mut net, &data, &cfg), Err(Error::Diverged { epoch: 1..=3, .. })));
    }
}
