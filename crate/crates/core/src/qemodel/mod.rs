//! Regression heads over encoder embeddings: model construction, forward
//! pass, training, the linear-regression baseline, document chunking, and
//! checkpointing.
//!
//! A model scores a system output (optionally against its original
//! sentence) for one or more qualities. The input to every head is the
//! fixed-order concatenation `[original embedding, output embedding,
//! projected original features, projected output features]`, with the
//! optional parts present according to the configuration:
//!
//! - `dual_encoder` adds the original-sentence embedding (and its features
//!   when `use_features` is on);
//! - `use_features` routes the five linguistic features through a shared
//!   trainable linear projector (5 → `feature_proj_dim`) before
//!   concatenation.
//!
//! Head modes: `S1` trains one model per quality (the config holds that one
//! quality); `M1` is a single affine map emitting all k qualities; `M3` is
//! k independent affine maps over the shared input. The encoder itself is
//! frozen — only heads and projector train.

mod checkpoint;
mod chunk;
mod linreg;
mod train;

pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use chunk::{chunk_document, length_weighted_mean, predict_document, DocumentChunk};
pub use linreg::{linreg_fit, linreg_predict, LinearModel};
pub use train::{loss_and_gradients, prepare_examples, train, PreparedExample, TrainConfig};

use std::collections::BTreeMap;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{ComplexityExample, JudgmentRecord};
use crate::encoders::{EncoderSpec, TextEncoder};
use crate::error::{Error, Result};
use crate::features::{text_features, FeatureVector, FrequencyTable};

/// How the regression heads share weights across qualities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeadMode {
    /// Single task: one model per quality; the config lists exactly one.
    S1,
    /// Multi task, one regressor: a single affine map emits all k values.
    M1,
    /// Multi task, k regressors: one affine map per quality.
    M3,
}

/// Head configuration: mode, qualities, and which input channels exist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeadConfig {
    /// Weight-sharing mode.
    pub mode: HeadMode,
    /// Quality names in output order; `k = qualities.len()`.
    pub qualities: Vec<String>,
    /// Whether the original sentence is encoded alongside the output.
    pub dual_encoder: bool,
    /// Whether the five linguistic features are projected and concatenated.
    pub use_features: bool,
    /// Projector output dimension `d_f`; meaningful iff `use_features`.
    pub feature_proj_dim: usize,
}

impl HeadConfig {
    /// Number of predicted qualities.
    pub fn k(&self) -> usize {
        self.qualities.len()
    }

    /// Head input dimension for an encoder of dimension `d`.
    pub fn input_dim(&self, d: usize) -> usize {
        let sides = if self.dual_encoder { 2 } else { 1 };
        let feature_dim = if self.use_features {
            self.feature_proj_dim * sides
        } else {
            0
        };
        d * sides + feature_dim
    }

    /// Checks structural validity.
    pub fn validate(&self) -> Result<()> {
        if self.qualities.is_empty() {
            return Err(Error::validation("head config lists no qualities"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for quality in &self.qualities {
            if quality.trim().is_empty() {
                return Err(Error::validation("empty quality name in head config"));
            }
            if !seen.insert(quality.as_str()) {
                return Err(Error::validation(format!(
                    "duplicate quality {quality:?} in head config"
                )));
            }
        }
        if self.mode == HeadMode::S1 && self.qualities.len() != 1 {
            return Err(Error::validation(format!(
                "single-task mode trains one quality per model, got {}",
                self.qualities.len()
            )));
        }
        if self.use_features && self.feature_proj_dim == 0 {
            return Err(Error::validation(
                "feature projector dimension must be at least 1",
            ));
        }
        Ok(())
    }
}

/// A dense affine map `y = Wx + b` with row-major weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    /// Input dimension.
    pub in_dim: usize,
    /// Output dimension.
    pub out_dim: usize,
    /// Row-major weights, `out_dim × in_dim`.
    pub weights: Vec<f64>,
    /// Bias, length `out_dim`.
    pub bias: Vec<f64>,
}

impl Affine {
    /// Uniform Glorot initialization from the given RNG; zero bias.
    fn init(rng: &mut ChaCha8Rng, in_dim: usize, out_dim: usize) -> Self {
        let limit = (6.0 / (in_dim + out_dim) as f64).sqrt();
        let dist = Uniform::new_inclusive(-limit, limit);
        Affine {
            in_dim,
            out_dim,
            weights: (0..in_dim * out_dim).map(|_| dist.sample(rng)).collect(),
            bias: vec![0.0; out_dim],
        }
    }

    /// Applies the map to one input vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.in_dim);
        let mut y = self.bias.clone();
        for (row, y_r) in y.iter_mut().enumerate() {
            let w = &self.weights[row * self.in_dim..(row + 1) * self.in_dim];
            *y_r += w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>();
        }
        y
    }

    fn param_count(&self) -> usize {
        self.weights.len() + self.bias.len()
    }
}

/// Scores for each configured quality.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// Quality name → predicted score.
    pub values: BTreeMap<String, f64>,
}

impl Prediction {
    /// Score for one quality.
    pub fn get(&self, quality: &str) -> Option<f64> {
        self.values.get(quality).copied()
    }
}

/// A trained (or initialized) quality-estimation model.
///
/// The encoder itself is not stored — only its spec; callers pass a
/// compatible [`TextEncoder`] to [`QEModel::forward`] and the training
/// entry points. That keeps models serializable and encoder backends
/// swappable.
#[derive(Debug, Clone, PartialEq)]
pub struct QEModel {
    config: HeadConfig,
    encoder_spec: EncoderSpec,
    feature_proj: Option<Affine>,
    heads: Vec<Affine>,
    seed: u64,
}

/// Builds a model with deterministic seed-derived initialization.
///
/// Parameter draw order is fixed (projector first, then heads in quality
/// order), so equal `(config, encoder, seed)` triples produce bit-identical
/// models.
pub fn build_model(config: HeadConfig, encoder: EncoderSpec, seed: u64) -> Result<QEModel> {
    config.validate()?;
    encoder.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let feature_proj = config
        .use_features
        .then(|| Affine::init(&mut rng, 5, config.feature_proj_dim));

    let input_dim = config.input_dim(encoder.dimension);
    let heads = match config.mode {
        HeadMode::M1 => vec![Affine::init(&mut rng, input_dim, config.k())],
        HeadMode::M3 => (0..config.k())
            .map(|_| Affine::init(&mut rng, input_dim, 1))
            .collect(),
        HeadMode::S1 => vec![Affine::init(&mut rng, input_dim, 1)],
    };

    Ok(QEModel {
        config,
        encoder_spec: encoder,
        feature_proj,
        heads,
        seed,
    })
}

impl QEModel {
    /// The head configuration.
    pub fn config(&self) -> &HeadConfig {
        &self.config
    }

    /// Spec of the encoder the model was built for.
    pub fn encoder_spec(&self) -> &EncoderSpec {
        &self.encoder_spec
    }

    /// Seed used for initialization.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Mutable access for training and checkpoint restore.
    pub(crate) fn parts_mut(&mut self) -> (Option<&mut Affine>, &mut [Affine]) {
        (self.feature_proj.as_mut(), &mut self.heads)
    }

    /// Read access for the training internals.
    pub(crate) fn parts(&self) -> (Option<&Affine>, &[Affine]) {
        (self.feature_proj.as_ref(), &self.heads)
    }

    /// All trainable parameters in the documented flat order: projector
    /// weights then bias (when present), then each head's weights then bias.
    pub fn flat_params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        if let Some(proj) = &self.feature_proj {
            out.extend_from_slice(&proj.weights);
            out.extend_from_slice(&proj.bias);
        }
        for head in &self.heads {
            out.extend_from_slice(&head.weights);
            out.extend_from_slice(&head.bias);
        }
        out
    }

    /// Overwrites all trainable parameters from the flat layout.
    pub fn set_flat_params(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(Error::validation(format!(
                "expected {} parameters, got {}",
                self.param_count(),
                params.len()
            )));
        }
        let mut offset = 0;
        let mut take = |n: usize, dst: &mut Vec<f64>| {
            dst.copy_from_slice(&params[offset..offset + n]);
            offset += n;
        };
        if let Some(proj) = &mut self.feature_proj {
            take(proj.weights.len(), &mut proj.weights);
            take(proj.bias.len(), &mut proj.bias);
        }
        for head in &mut self.heads {
            take(head.weights.len(), &mut head.weights);
            take(head.bias.len(), &mut head.bias);
        }
        Ok(())
    }

    /// Total trainable parameter count.
    pub fn param_count(&self) -> usize {
        self.feature_proj.as_ref().map_or(0, Affine::param_count)
            + self.heads.iter().map(Affine::param_count).sum::<usize>()
    }

    /// Assembles the head input vector from pre-encoded parts.
    ///
    /// `embeds` is the already-concatenated pooled embedding(s); `feats`
    /// holds the raw 5-feature arrays in [original, output] order (however
    /// many the config requires), each passed through the shared projector.
    pub(crate) fn assemble_input(&self, embeds: &[f64], feats: &[[f64; 5]]) -> Vec<f64> {
        let mut z = embeds.to_vec();
        if let Some(proj) = &self.feature_proj {
            for f in feats {
                z.extend(proj.apply(f));
            }
        }
        z
    }

    /// Applies the heads to an assembled input vector, in quality order.
    pub(crate) fn apply_heads(&self, z: &[f64]) -> Vec<f64> {
        match self.config.mode {
            HeadMode::M1 => self.heads[0].apply(z),
            HeadMode::M3 => self.heads.iter().map(|h| h.apply(z)[0]).collect(),
            HeadMode::S1 => vec![self.heads[0].apply(z)[0]],
        }
    }

    /// Scores one (original, output) pair.
    ///
    /// `original` and the feature vectors must be present exactly when the
    /// config requires them ([`HeadConfig::dual_encoder`] /
    /// [`HeadConfig::use_features`]); the encoder must match the model's
    /// spec dimension.
    pub fn forward(
        &self,
        encoder: &dyn TextEncoder,
        original: Option<&str>,
        output: &str,
        features_orig: Option<&FeatureVector>,
        features_out: Option<&FeatureVector>,
    ) -> Result<Prediction> {
        let (embeds, feats) =
            self.encode_inputs(encoder, original, output, features_orig, features_out)?;
        let z = self.assemble_input(&embeds, &feats);
        let scores = self.apply_heads(&z);
        let values = self
            .config
            .qualities
            .iter()
            .cloned()
            .zip(scores)
            .collect::<BTreeMap<_, _>>();
        Ok(Prediction { values })
    }

    /// Validates input presence against the config, encodes the text(s),
    /// and returns the concatenated embeddings plus raw feature arrays.
    pub(crate) fn encode_inputs(
        &self,
        encoder: &dyn TextEncoder,
        original: Option<&str>,
        output: &str,
        features_orig: Option<&FeatureVector>,
        features_out: Option<&FeatureVector>,
    ) -> Result<(Vec<f64>, Vec<[f64; 5]>)> {
        if encoder.spec().dimension != self.encoder_spec.dimension {
            return Err(Error::validation(format!(
                "encoder dimension {} does not match the model's {}",
                encoder.spec().dimension,
                self.encoder_spec.dimension
            )));
        }
        if self.config.dual_encoder != original.is_some() {
            return Err(Error::validation(if self.config.dual_encoder {
                "dual-encoder model requires the original sentence"
            } else {
                "single-encoder model does not accept an original sentence"
            }));
        }
        if self.config.use_features {
            if features_out.is_none() {
                return Err(Error::validation(
                    "feature-using model requires output features",
                ));
            }
            if self.config.dual_encoder && features_orig.is_none() {
                return Err(Error::validation(
                    "dual-encoder feature-using model requires original features",
                ));
            }
        } else if features_orig.is_some() || features_out.is_some() {
            return Err(Error::validation(
                "model was configured without the feature channel",
            ));
        }

        let mut embeds = Vec::with_capacity(self.config.input_dim(self.encoder_spec.dimension));
        if let Some(original) = original {
            embeds.extend(encoder.encode(original)?.pooled);
        }
        embeds.extend(encoder.encode(output)?.pooled);

        let mut feats = Vec::new();
        if self.config.use_features {
            if self.config.dual_encoder {
                feats.push(features_orig.expect("checked above").as_array());
            }
            feats.push(features_out.expect("checked above").as_array());
        }
        Ok((embeds, feats))
    }
}

/// One training example: a text (pair) with labels, plus the group id that
/// keeps related examples in the same cross-validation fold.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainExample {
    /// Fold-grouping key (source sentence id, article id, ...).
    pub group_id: String,
    /// Original sentence, required by dual-encoder models.
    pub original: Option<String>,
    /// The text being scored.
    pub output: String,
    /// Features of the original, required by dual + feature models.
    pub features_orig: Option<FeatureVector>,
    /// Features of the output, required by feature-using models.
    pub features_out: Option<FeatureVector>,
    /// Quality name → gold score.
    pub labels: BTreeMap<String, f64>,
}

impl TrainExample {
    /// A judgment record as a training example, grouped by source sentence.
    pub fn from_judgment(record: &JudgmentRecord) -> Self {
        let mut labels = BTreeMap::new();
        labels.insert("fluency".to_owned(), record.fluency);
        labels.insert("adequacy".to_owned(), record.adequacy);
        labels.insert("complexity".to_owned(), record.complexity);
        TrainExample {
            group_id: record.source_id.clone(),
            original: Some(record.original.clone()),
            output: record.output.clone(),
            features_orig: None,
            features_out: None,
            labels: labels.into_iter().collect(),
        }
    }

    /// A complexity example as a training example (label key
    /// `"complexity"`), grouped by its unit id.
    pub fn from_complexity(example: &ComplexityExample) -> Self {
        let mut labels = BTreeMap::new();
        labels.insert("complexity".to_owned(), example.label);
        TrainExample {
            group_id: example.unit_id.clone(),
            original: None,
            output: example.text.clone(),
            features_orig: None,
            features_out: None,
            labels,
        }
    }

    /// Replaces the fold-grouping key.
    pub fn with_group(mut self, group_id: impl Into<String>) -> Self {
        self.group_id = group_id.into();
        self
    }

    /// Fills in the feature vectors from the texts (no parse trees; parse
    /// height is 0 with the missing-parse flag).
    pub fn with_features(mut self, table: &FrequencyTable) -> Result<Self> {
        if let Some(original) = &self.original {
            self.features_orig = Some(text_features(original, table)?);
        }
        self.features_out = Some(text_features(&self.output, table)?);
        Ok(self)
    }
}
