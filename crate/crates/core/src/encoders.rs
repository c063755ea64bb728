//! The pluggable text-encoder contract, a deterministic stub encoder, and
//! the two encoder-based baselines: pseudo-log-likelihood under a masked
//! language model and mean-pooled embedding cosine similarity.
//!
//! A real pretrained encoder is an adapter someone else plugs in; the
//! repository ships only [`StubEncoder`], which is a pure function of
//! (seed, text). That is enough to exercise every downstream component —
//! budgeting, chunking, regression heads, checkpoints — with bit-exact
//! reproducibility and no model weights.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::features::FrequencyTable;
use crate::util::fnv1a64;

/// A text rendered as sub-word units; the unit count is what the encoder's
/// budget is measured in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordSequence {
    /// Stable sub-word unit ids in text order.
    pub units: Vec<u32>,
}

impl SubwordSequence {
    /// Number of sub-word units.
    pub fn len(&self) -> usize {
        self.units.len()
    }

    /// True for empty text.
    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

/// Per-unit vectors plus their mean-pooled sentence vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EncoderOutput {
    /// One vector of dimension `d` per sub-word unit.
    pub token_vectors: Vec<Vec<f64>>,
    /// Component-wise mean of `token_vectors` (all zeros for empty text).
    pub pooled: Vec<f64>,
}

/// Identity and shape of an encoder backend.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EncoderSpec {
    /// Backend name (`"stub"` for the bundled encoder).
    pub name: String,
    /// Embedding dimension d.
    pub dimension: usize,
    /// Sub-word budget per encode call.
    pub max_units: usize,
}

impl EncoderSpec {
    /// Spec of the bundled stub: d = 64, budget 512.
    pub fn stub() -> Self {
        EncoderSpec {
            name: "stub".to_owned(),
            dimension: 64,
            max_units: 512,
        }
    }

    /// Checks the shape invariants.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::validation("encoder name is empty"));
        }
        if self.dimension == 0 {
            return Err(Error::validation("encoder dimension must be at least 1"));
        }
        if self.max_units == 0 {
            return Err(Error::validation("encoder budget must be at least 1"));
        }
        Ok(())
    }
}

/// Contract every encoder backend implements.
///
/// Implementations must be deterministic unless explicitly configured for
/// training-mode nondeterminism, and `subword_tokenize` must report exactly
/// the length `encode` will see — the budget check depends on it.
pub trait TextEncoder {
    /// Shape and identity of this backend.
    fn spec(&self) -> &EncoderSpec;

    /// Splits text into the backend's sub-word units.
    fn subword_tokenize(&self, text: &str) -> SubwordSequence;

    /// Embeds text within the budget; over-budget input is an error naming
    /// the offending length.
    fn encode(&self, text: &str) -> Result<EncoderOutput>;

    /// Longest prefix of `text` whose sub-word length is ≤ `max_units`.
    ///
    /// Used by document chunking to cut oversized sentences. Implementations
    /// may normalize inter-word whitespace in the returned prefix.
    fn truncate_to_budget(&self, text: &str, max_units: usize) -> String;
}

/// Deterministic test encoder: words are chopped into ≤ 4-character pieces,
/// each piece hashed to a seeded unit-norm Gaussian vector.
///
/// Two stubs with equal seeds agree everywhere; different seeds give
/// unrelated embeddings. The embedding of a piece does not depend on its
/// neighbors, which keeps chunking arithmetic exact in tests.
#[derive(Debug, Clone)]
pub struct StubEncoder {
    spec: EncoderSpec,
    seed: u64,
}

impl StubEncoder {
    /// Stub with the default spec (d = 64, budget 512).
    pub fn new(seed: u64) -> Self {
        StubEncoder {
            spec: EncoderSpec::stub(),
            seed,
        }
    }

    /// Stub with a custom spec (dimension/budget), for shape tests.
    pub fn with_spec(spec: EncoderSpec, seed: u64) -> Result<Self> {
        spec.validate()?;
        Ok(StubEncoder { spec, seed })
    }

    /// The seed this stub was built with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Splits a word into ≤ 4-character pieces ("internationalization" →
    /// 5 pieces).
    fn pieces(word: &str) -> Vec<String> {
        let chars: Vec<char> = word.chars().collect();
        chars.chunks(4).map(|c| c.iter().collect()).collect()
    }

    /// Unit-norm embedding of one piece, derived only from (seed, piece).
    fn piece_vector(&self, piece: &str) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a64(piece.as_bytes()));
        loop {
            let v: Vec<f64> = (0..self.spec.dimension)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            // A zero-norm draw is astronomically unlikely; resampling keeps
            // the unit-norm guarantee unconditional.
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}

impl TextEncoder for StubEncoder {
    fn spec(&self) -> &EncoderSpec {
        &self.spec
    }

    fn subword_tokenize(&self, text: &str) -> SubwordSequence {
        let units = text
            .split_whitespace()
            .flat_map(Self::pieces)
            .map(|piece| {
                let h = fnv1a64(piece.as_bytes());
                (h ^ (h >> 32)) as u32
            })
            .collect();
        SubwordSequence { units }
    }

    fn encode(&self, text: &str) -> Result<EncoderOutput> {
        let pieces: Vec<String> = text.split_whitespace().flat_map(Self::pieces).collect();
        if pieces.len() > self.spec.max_units {
            return Err(Error::Budget {
                length: pieces.len(),
                max_units: self.spec.max_units,
            });
        }

        let token_vectors: Vec<Vec<f64>> = pieces
            .iter()
            .map(|piece| self.piece_vector(piece))
            .collect();
        let mut pooled = vec![0.0; self.spec.dimension];
        for vector in &token_vectors {
            for (acc, x) in pooled.iter_mut().zip(vector) {
                *acc += x;
            }
        }
        if !token_vectors.is_empty() {
            let n = token_vectors.len() as f64;
            for x in &mut pooled {
                *x /= n;
            }
        }
        Ok(EncoderOutput {
            token_vectors,
            pooled,
        })
    }

    fn truncate_to_budget(&self, text: &str, max_units: usize) -> String {
        let mut kept: Vec<String> = Vec::new();
        let mut used = 0usize;
        for word in text.split_whitespace() {
            let pieces = Self::pieces(word);
            if used + pieces.len() <= max_units {
                used += pieces.len();
                kept.push(word.to_owned());
                continue;
            }
            // Keep the word's leading pieces that still fit; pieces are
            // 4 characters each, so that prefix is a character cut.
            let room = max_units - used;
            if room > 0 {
                let partial: String = pieces[..room].concat();
                kept.push(partial);
            }
            break;
        }
        kept.join(" ")
    }
}

/// A masked-language-model backend scoring one masked position.
pub trait MaskedLanguageModel {
    /// Log probability (≤ 0) of the true token at `position` given the rest
    /// of the sentence; out-of-range positions are an error.
    fn mlm_log_prob(&self, tokens: &[String], position: usize) -> Result<f64>;
}

/// Context-free stub MLM: the probability of a token is its unigram relative
/// frequency, with out-of-vocabulary count 1.
pub struct UnigramLm<'t> {
    table: &'t FrequencyTable,
}

impl<'t> UnigramLm<'t> {
    /// Wraps a frequency table as the MLM backend.
    pub fn new(table: &'t FrequencyTable) -> Self {
        UnigramLm { table }
    }
}

impl MaskedLanguageModel for UnigramLm<'_> {
    fn mlm_log_prob(&self, tokens: &[String], position: usize) -> Result<f64> {
        let Some(token) = tokens.get(position) else {
            return Err(Error::validation(format!(
                "masked position {position} out of range for {} tokens",
                tokens.len()
            )));
        };
        Ok(self.table.log_prob(token))
    }
}

/// Mean masked log probability over all positions — the language-model
/// fluency baseline. Empty input is an error.
pub fn pseudo_log_likelihood(lm: &dyn MaskedLanguageModel, tokens: &[String]) -> Result<f64> {
    if tokens.is_empty() {
        return Err(Error::validation(
            "pseudo-log-likelihood of an empty sentence is undefined",
        ));
    }
    let mut sum = 0.0;
    for position in 0..tokens.len() {
        sum += lm.mlm_log_prob(tokens, position)?;
    }
    Ok(sum / tokens.len() as f64)
}

/// Cosine similarity of the pooled embeddings of two texts — the
/// embedding-similarity adequacy baseline. Value in [-1, 1].
pub fn embedding_similarity(encoder: &dyn TextEncoder, a: &str, b: &str) -> Result<f64> {
    let va = encoder.encode(a)?.pooled;
    let vb = encoder.encode(b)?.pooled;
    let dot: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
    let na = va.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = vb.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::numeric(
            "cosine similarity undefined for a zero-norm pooled vector",
        ));
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}
