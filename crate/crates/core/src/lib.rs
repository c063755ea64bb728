//! Reference-free quality estimation and complexity prediction for text
//! simplification.
//!
//! The toolkit predicts Fluency, Adequacy, and Complexity of simplified text
//! from the (original, output) pair without human references, and ships the
//! surrounding machinery: linguistic feature extraction, reference-based
//! comparison metrics (BLEU, SARI), a pluggable text-encoder contract with a
//! deterministic stub, multi-task regression heads, document chunking with
//! length-weighted aggregation, and a correlation-based evaluation harness.
//!
//! # Modules
//!
//! - [`corpus`]: data model, file ingestion, complexity labeling, fold
//!   assignment
//! - [`features`]: the five linguistic features (word length, syllables,
//!   unigram frequency, sentence length, parse height)
//! - [`refmetrics`]: BLEU and SARI baselines
//! - [`encoders`]: encoder contract, deterministic stub, masked-LM and
//!   embedding-similarity baselines
//! - [`qemodel`]: regression heads (S-1 / M-1 / M-3), training, linear
//!   regression, document chunking and prediction
//! - [`eval`]: Pearson/Spearman/Kendall statistics, pooled cross-validation,
//!   transfer evaluation, report rendering

pub mod corpus;
pub mod encoders;
pub mod error;
pub mod eval;
pub mod features;
pub mod qemodel;
pub mod refmetrics;
pub mod util;

pub use error::{Error, Result};
