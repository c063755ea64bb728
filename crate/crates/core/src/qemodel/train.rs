//! Mini-batch SGD on squared error, with manual gradients through the
//! heads and the shared feature projector. The encoder is frozen: every
//! example is encoded once up front and the embeddings are treated as
//! constants thereafter.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{HeadMode, QEModel, TrainExample};
use crate::encoders::TextEncoder;
use crate::error::{Error, Result};

/// Optimizer settings. The loss is fixed: squared error summed over a
/// model's qualities and averaged over the batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Number of passes over the data; 0 leaves the model untouched.
    pub epochs: usize,
    /// Examples per SGD step; the final batch of an epoch may be smaller.
    pub batch_size: usize,
    /// Learning rate.
    pub lr: f64,
    /// Seed for the shuffle RNG (one stream across all epochs).
    pub seed: u64,
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::validation("batch size must be at least 1"));
        }
        if !self.lr.is_finite() || self.lr <= 0.0 {
            return Err(Error::validation(format!(
                "learning rate must be finite and positive, got {}",
                self.lr
            )));
        }
        Ok(())
    }
}

/// An example after one-time encoding: constants for the optimizer.
#[derive(Debug, Clone)]
pub struct PreparedExample {
    /// Concatenated pooled embedding(s), `[original?, output]`.
    pub embeds: Vec<f64>,
    /// Raw feature arrays in `[original?, output]` order (empty when the
    /// model does not use the feature channel).
    pub feats: Vec<[f64; 5]>,
    /// Gold scores in the model's quality order.
    pub targets: Vec<f64>,
}

/// Encodes and validates every example against the model's config.
pub fn prepare_examples(
    model: &QEModel,
    encoder: &dyn TextEncoder,
    examples: &[TrainExample],
) -> Result<Vec<PreparedExample>> {
    examples
        .iter()
        .map(|example| {
            let targets = model
                .config()
                .qualities
                .iter()
                .map(|quality| {
                    example.labels.get(quality).copied().ok_or_else(|| {
                        Error::validation(format!(
                            "example in group {:?} has no {quality:?} label",
                            example.group_id
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (embeds, feats) = model.encode_inputs(
                encoder,
                example.original.as_deref(),
                &example.output,
                example.features_orig.as_ref(),
                example.features_out.as_ref(),
            )?;
            Ok(PreparedExample {
                embeds,
                feats,
                targets,
            })
        })
        .collect()
}

/// Per-parameter gradients, shaped like the model's trainable parts.
pub(crate) struct Gradients {
    proj_weights: Vec<f64>,
    proj_bias: Vec<f64>,
    heads: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Gradients {
    fn zeros_like(model: &QEModel) -> Self {
        let (proj, heads) = model.parts();
        let (pw, pb) = proj.map_or((0, 0), |p| (p.weights.len(), p.bias.len()));
        Gradients {
            proj_weights: vec![0.0; pw],
            proj_bias: vec![0.0; pb],
            heads: heads
                .iter()
                .map(|h| (vec![0.0; h.weights.len()], vec![0.0; h.bias.len()]))
                .collect(),
        }
    }

    fn scale(&mut self, factor: f64) {
        for g in self
            .proj_weights
            .iter_mut()
            .chain(self.proj_bias.iter_mut())
        {
            *g *= factor;
        }
        for (w, b) in &mut self.heads {
            for g in w.iter_mut().chain(b.iter_mut()) {
                *g *= factor;
            }
        }
    }

    /// Gradients in the same flat order as [`QEModel::flat_params`].
    pub(crate) fn flat(&self) -> Vec<f64> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.proj_weights);
        out.extend_from_slice(&self.proj_bias);
        for (w, b) in &self.heads {
            out.extend_from_slice(w);
            out.extend_from_slice(b);
        }
        out
    }
}

/// Maps a quality index onto (head index, row within that head).
fn head_slot(mode: HeadMode, quality: usize) -> (usize, usize) {
    match mode {
        HeadMode::M1 => (0, quality),
        HeadMode::M3 => (quality, 0),
        HeadMode::S1 => (0, 0),
    }
}

/// Batch loss and its gradients.
///
/// Loss = `(1/B) Σ_examples Σ_qualities (prediction − target)²`. Shared
/// with the finite-difference check in the tests, so the analytic
/// gradients are verified against this exact function.
pub(crate) fn loss_and_grads(model: &QEModel, batch: &[&PreparedExample]) -> (f64, Gradients) {
    let mut grads = Gradients::zeros_like(model);
    let mut loss = 0.0;
    let (proj, heads) = model.parts();

    for example in batch {
        let z = model.assemble_input(&example.embeds, &example.feats);
        let predictions = model.apply_heads(&z);
        let dim = z.len();
        let mut dz = vec![0.0; dim];

        for (q, (&prediction, &target)) in predictions.iter().zip(&example.targets).enumerate() {
            let residual = prediction - target;
            loss += residual * residual;
            let dy = 2.0 * residual;

            let (h, row) = head_slot(model.config().mode, q);
            let weights = &heads[h].weights[row * dim..(row + 1) * dim];
            let (grad_w, grad_b) = &mut grads.heads[h];
            for i in 0..dim {
                grad_w[row * dim + i] += dy * z[i];
                dz[i] += dy * weights[i];
            }
            grad_b[row] += dy;
        }

        if let Some(proj) = proj {
            let embed_len = example.embeds.len();
            let d_f = proj.out_dim;
            for (slot, features) in example.feats.iter().enumerate() {
                let dp = &dz[embed_len + slot * d_f..embed_len + (slot + 1) * d_f];
                for (a, &dp_a) in dp.iter().enumerate() {
                    for (b, &f_b) in features.iter().enumerate() {
                        grads.proj_weights[a * 5 + b] += dp_a * f_b;
                    }
                    grads.proj_bias[a] += dp_a;
                }
            }
        }
    }

    let inv = 1.0 / batch.len() as f64;
    grads.scale(inv);
    (loss * inv, grads)
}

/// One batch's loss and its gradients in [`QEModel::flat_params`] order.
///
/// Public surface for gradient verification and custom loops; [`train`]
/// uses the same computation internally, so checking these gradients
/// checks the trainer's.
pub fn loss_and_gradients(model: &QEModel, batch: &[PreparedExample]) -> (f64, Vec<f64>) {
    if batch.is_empty() {
        return (0.0, vec![0.0; model.param_count()]);
    }
    let refs: Vec<&PreparedExample> = batch.iter().collect();
    let (loss, grads) = loss_and_grads(model, &refs);
    (loss, grads.flat())
}

/// One SGD step: `w ← w − lr·g`.
fn apply_update(model: &mut QEModel, grads: &Gradients, lr: f64) {
    let (proj, heads) = model.parts_mut();
    if let Some(proj) = proj {
        step(&mut proj.weights, &grads.proj_weights, lr);
        step(&mut proj.bias, &grads.proj_bias, lr);
    }
    for (head, (gw, gb)) in heads.iter_mut().zip(&grads.heads) {
        step(&mut head.weights, gw, lr);
        step(&mut head.bias, gb, lr);
    }

    fn step(params: &mut [f64], grads: &[f64], lr: f64) {
        for (p, g) in params.iter_mut().zip(grads) {
            *p -= lr * g;
        }
    }
}

/// Trains the heads (and projector) in place; the encoder stays frozen.
///
/// Returns the per-epoch mean loss. Examples are shuffled every epoch by a
/// single RNG stream seeded from `cfg.seed`, batched in order, and each
/// batch takes one SGD step. A non-finite batch loss aborts with a numeric
/// error; `epochs = 0` returns an empty history and leaves the model
/// untouched.
pub fn train(
    model: &mut QEModel,
    examples: &[TrainExample],
    encoder: &dyn TextEncoder,
    cfg: &TrainConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let prepared = prepare_examples(model, encoder, examples)?;
    if prepared.is_empty() {
        return Err(Error::validation("no training examples"));
    }

    let n = prepared.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut indices: Vec<usize> = (0..n).collect();
    let mut history = Vec::with_capacity(cfg.epochs);

    for epoch in 0..cfg.epochs {
        indices.shuffle(&mut rng);
        let mut weighted_loss = 0.0;
        for chunk in indices.chunks(cfg.batch_size) {
            let batch: Vec<&PreparedExample> = chunk.iter().map(|&i| &prepared[i]).collect();
            let (loss, grads) = loss_and_grads(model, &batch);
            if !loss.is_finite() {
                return Err(Error::numeric(format!(
                    "training diverged: non-finite loss in epoch {epoch}"
                )));
            }
            apply_update(model, &grads, cfg.lr);
            weighted_loss += loss * batch.len() as f64;
        }
        history.push(weighted_loss / n as f64);
    }
    Ok(history)
}
