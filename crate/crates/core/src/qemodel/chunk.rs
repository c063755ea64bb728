//! Document-level scoring for encoders with a bounded input window:
//! greedy sentence packing into sub-document chunks, and a length-weighted
//! average over per-chunk predictions.

use serde::{Deserialize, Serialize};

use super::QEModel;
use crate::encoders::TextEncoder;
use crate::error::{Error, Result};
use crate::features::{text_features, FrequencyTable};

/// A contiguous run of sentences that fits the encoder budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentChunk {
    /// The chunk's sentences joined by single spaces (or a truncated
    /// single sentence when `truncated` is set).
    pub text: String,
    /// Sub-word units in the chunk; at most the budget.
    pub subword_length: usize,
    /// Half-open range of sentence indices `[start, end)` the chunk covers.
    pub span: (usize, usize),
    /// Whether a single over-budget sentence was cut down to fit.
    pub truncated: bool,
}

/// Packs sentences greedily into chunks of at most `budget` sub-word units.
///
/// Sentences are consumed in order; a sentence joins the current chunk
/// while the running total stays within budget, otherwise it starts a new
/// one. A single sentence longer than the whole budget becomes its own
/// chunk, truncated to exactly the budget and flagged. Spans are
/// contiguous, disjoint, and cover every sentence.
pub fn chunk_document(
    encoder: &dyn TextEncoder,
    sentences: &[String],
    budget: usize,
) -> Result<Vec<DocumentChunk>> {
    if budget == 0 {
        return Err(Error::validation("chunk budget must be at least 1"));
    }

    fn flush(
        chunks: &mut Vec<DocumentChunk>,
        start: &mut usize,
        members: &mut Vec<&str>,
        total: &mut usize,
        end: usize,
    ) {
        if !members.is_empty() {
            chunks.push(DocumentChunk {
                text: members.join(" "),
                subword_length: *total,
                span: (*start, end),
                truncated: false,
            });
        }
        members.clear();
        *total = 0;
        *start = end;
    }

    let mut chunks = Vec::new();
    let mut start = 0;
    let mut members: Vec<&str> = Vec::new();
    let mut total = 0usize;

    for (index, sentence) in sentences.iter().enumerate() {
        let length = encoder.subword_tokenize(sentence).len();
        if length > budget {
            flush(&mut chunks, &mut start, &mut members, &mut total, index);
            chunks.push(DocumentChunk {
                text: encoder.truncate_to_budget(sentence, budget),
                subword_length: budget,
                span: (index, index + 1),
                truncated: true,
            });
            start = index + 1;
            continue;
        }
        if total + length > budget {
            flush(&mut chunks, &mut start, &mut members, &mut total, index);
        }
        members.push(sentence);
        total += length;
    }
    flush(
        &mut chunks,
        &mut start,
        &mut members,
        &mut total,
        sentences.len(),
    );
    Ok(chunks)
}

/// Weighted mean `Σ wᵢ·vᵢ / Σ wᵢ`; `None` when the weights sum to zero.
pub fn length_weighted_mean(pairs: &[(usize, f64)]) -> Option<f64> {
    let total: usize = pairs.iter().map(|(w, _)| w).sum();
    if total == 0 {
        return None;
    }
    let weighted: f64 = pairs.iter().map(|&(w, v)| w as f64 * v).sum();
    Some(weighted / total as f64)
}

/// Scores a document as the length-weighted mean of per-chunk predictions.
///
/// The model must be a single-encoder, single-quality configuration (the
/// document-complexity setting); the chunk budget is the encoder's
/// `max_units`. `table` is required when the model uses the feature
/// channel. A document with no sub-word content at all is an error.
pub fn predict_document(
    model: &QEModel,
    encoder: &dyn TextEncoder,
    table: Option<&FrequencyTable>,
    sentences: &[String],
) -> Result<f64> {
    if model.config().dual_encoder {
        return Err(Error::validation(
            "document prediction needs a single-encoder model",
        ));
    }
    if model.config().k() != 1 {
        return Err(Error::validation(format!(
            "document prediction needs a single-quality model, got {}",
            model.config().k()
        )));
    }
    let quality = model.config().qualities[0].clone();

    let chunks = chunk_document(encoder, sentences, encoder.spec().max_units)?;
    let mut pairs = Vec::with_capacity(chunks.len());
    for chunk in &chunks {
        if chunk.subword_length == 0 {
            continue;
        }
        let features = if model.config().use_features {
            let table = table
                .ok_or_else(|| Error::validation("feature-using model needs a frequency table"))?;
            Some(text_features(&chunk.text, table)?)
        } else {
            None
        };
        let prediction = model.forward(encoder, None, &chunk.text, None, features.as_ref())?;
        pairs.push((
            chunk.subword_length,
            prediction.get(&quality).expect("configured quality"),
        ));
    }

    length_weighted_mean(&pairs)
        .ok_or_else(|| Error::validation("document has no sub-word content to score"))
}
