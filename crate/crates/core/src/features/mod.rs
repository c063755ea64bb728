//! The five linguistic features used for complexity prediction: content-word
//! length in characters and syllables, content-word log unigram frequency,
//! sentence length in tokens, and constituency parse height.
//!
//! The pipeline is deliberately modular: [`tokenize`] produces POS-tagged
//! tokens (with a pluggable tagger), [`FrequencyTable`] supplies unigram
//! counts, parses arrive pre-computed in bracketed text, and
//! [`extract_features`] combines them into one [`FeatureVector`] per
//! sentence. [`document_features`] averages sentence vectors for
//! document-level prediction.
//!
//! Conventions (fixed so results are deterministic and testable):
//!
//! - A *content word* is any token tagged noun, verb, adjective, or adverb.
//! - Sentence length counts **all** tokens, punctuation included.
//! - Frequency is the natural log of the raw count; out-of-vocabulary words
//!   use count 1 and thus contribute 0.0.
//! - A sentence with no content words reports 0 for the three content-word
//!   features, with a flag recorded; a missing parse reports height 0 with a
//!   flag.

mod frequency;
mod parse;
mod syllable;
mod tokenize;

pub use frequency::{log_unigram_frequency, FrequencyTable};
pub use parse::{parse_height, ParseTree};
pub use syllable::count_syllables;
pub use tokenize::{tokenize, tokenize_with, LexiconTagger, PosTag, PosTagger, Token, CLITICS};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degenerate-input markers recorded during feature extraction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureFlags {
    /// No token was a content word; the three content-word features are 0.
    pub no_content_words: bool,
    /// No parse tree was supplied; `parse_height` is 0.
    pub missing_parse: bool,
}

/// The five features for one sentence (or one document after averaging).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Mean characters per content word.
    pub word_length: f64,
    /// Mean syllables per content word.
    pub syllables: f64,
    /// Mean natural-log unigram count of content words.
    pub frequency: f64,
    /// Token count, punctuation included.
    pub sentence_length: f64,
    /// Height of the constituency parse (leaf = 0).
    pub parse_height: f64,
    /// Markers for the zero-content-word and missing-parse conventions.
    #[serde(default)]
    pub flags: FeatureFlags,
}

impl FeatureVector {
    /// The five feature values in fixed order (word length, syllables,
    /// frequency, sentence length, parse height), as consumed by the
    /// regression models.
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.word_length,
            self.syllables,
            self.frequency,
            self.sentence_length,
            self.parse_height,
        ]
    }
}

/// Computes the feature vector for one tokenized sentence.
///
/// `tree`, when present, must have leaves matching the token surfaces in
/// order. Word length, syllables, and frequency average over content words
/// only; when there are none they are reported as 0 and flagged. A missing
/// tree reports parse height 0 and is flagged.
pub fn extract_features(
    tokens: &[Token],
    tree: Option<&ParseTree>,
    table: &FrequencyTable,
) -> Result<FeatureVector> {
    if let Some(tree) = tree {
        check_leaf_alignment(tokens, tree)?;
    }

    let content: Vec<&Token> = tokens.iter().filter(|t| t.pos.is_content()).collect();
    let mut flags = FeatureFlags::default();

    let (word_length, syllables, frequency) = if content.is_empty() {
        flags.no_content_words = true;
        (0.0, 0.0, 0.0)
    } else {
        let n = content.len() as f64;
        let mut chars = 0.0;
        let mut syls = 0.0;
        let mut freq = 0.0;
        for token in &content {
            chars += token.surface.chars().count() as f64;
            syls += count_syllables(&token.surface)? as f64;
            freq += log_unigram_frequency(&token.surface, table);
        }
        (chars / n, syls / n, freq / n)
    };

    let parse_height = match tree {
        Some(tree) => parse_height(tree) as f64,
        None => {
            flags.missing_parse = true;
            0.0
        }
    };

    Ok(FeatureVector {
        word_length,
        syllables,
        frequency,
        sentence_length: tokens.len() as f64,
        parse_height,
        flags,
    })
}

fn check_leaf_alignment(tokens: &[Token], tree: &ParseTree) -> Result<()> {
    let leaves = tree.leaves();
    if leaves.len() != tokens.len() {
        return Err(Error::validation(format!(
            "parse tree has {} leaves but the sentence has {} tokens",
            leaves.len(),
            tokens.len()
        )));
    }
    for (i, (leaf, token)) in leaves.iter().zip(tokens).enumerate() {
        if *leaf != token.surface {
            return Err(Error::validation(format!(
                "parse leaf {i} is {leaf:?} but token {i} is {:?}",
                token.surface
            )));
        }
    }
    Ok(())
}

/// Tokenizes `text` with the default tagger and extracts features without a
/// parse tree.
///
/// Convenience for call sites that work from raw text (model side channels,
/// document chunks); parse height is 0 with the missing-parse flag set.
pub fn text_features(text: &str, table: &FrequencyTable) -> Result<FeatureVector> {
    let tokens = tokenize(text);
    extract_features(&tokens, None, table)
}

/// Averages sentence feature vectors into one document-level vector.
///
/// Every component is the arithmetic mean over sentences (so
/// `sentence_length` becomes mean tokens per sentence); flags are OR-ed.
pub fn document_features(sentence_features: &[FeatureVector]) -> Result<FeatureVector> {
    if sentence_features.is_empty() {
        return Err(Error::validation(
            "cannot average features over an empty sentence list",
        ));
    }
    let n = sentence_features.len() as f64;
    let mut sums = [0.0; 5];
    let mut flags = FeatureFlags::default();
    for fv in sentence_features {
        for (sum, value) in sums.iter_mut().zip(fv.as_array()) {
            *sum += value;
        }
        flags.no_content_words |= fv.flags.no_content_words;
        flags.missing_parse |= fv.flags.missing_parse;
    }
    Ok(FeatureVector {
        word_length: sums[0] / n,
        syllables: sums[1] / n,
        frequency: sums[2] / n,
        sentence_length: sums[3] / n,
        parse_height: sums[4] / n,
        flags,
    })
}
