//! Unigram frequency table with the log-count convention.
//!
//! The table maps lowercased words to positive counts and is read-only after
//! construction. Feature extraction uses the natural log of the raw count;
//! out-of-vocabulary words are given count 1, so they contribute
//! `ln(1) = 0`. Using raw counts rather than relative frequencies only
//! shifts the feature by a constant (`ln total`), which correlation-based
//! evaluation cannot see.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Word → count map plus the total count.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    counts: HashMap<String, u64>,
    total: u64,
}

impl FrequencyTable {
    /// Builds a table from (word, count) pairs.
    ///
    /// Words are lowercased; duplicates (after lowercasing) and zero counts
    /// are rejected, as is an empty table.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u64)>) -> Result<Self> {
        let mut counts = HashMap::new();
        let mut total = 0u64;
        for (word, count) in pairs {
            let word = word.to_lowercase();
            if word.is_empty() {
                return Err(Error::validation("empty word in frequency table"));
            }
            if count == 0 {
                return Err(Error::validation(format!(
                    "word {word:?} has count 0; counts must be positive"
                )));
            }
            if counts.insert(word.clone(), count).is_some() {
                return Err(Error::validation(format!(
                    "duplicate word {word:?} in frequency table"
                )));
            }
            total = total.checked_add(count).ok_or_else(|| {
                Error::validation("frequency table total overflows u64".to_owned())
            })?;
        }
        if counts.is_empty() {
            return Err(Error::validation("frequency table has no entries"));
        }
        Ok(FrequencyTable { counts, total })
    }

    /// Loads a TSV file of `word<TAB>count` lines.
    ///
    /// Blank lines are skipped; malformed lines are parse errors with their
    /// 1-based line number; duplicate words are validation errors.
    pub fn load_tsv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut pairs = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (word, count) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(line_no, "expected word<TAB>count"))?;
            let word = word.trim().to_lowercase();
            let count: u64 = count.trim().parse().map_err(|e| {
                Error::parse(
                    line_no,
                    format!("count for {word:?} is not a positive integer: {e}"),
                )
            })?;
            if let Some(first) = seen.insert(word.clone(), line_no) {
                return Err(Error::validation(format!(
                    "duplicate word {word:?} at lines {first} and {line_no}"
                )));
            }
            pairs.push((word, count));
        }
        Self::from_pairs(pairs)
    }

    /// Count of a word (lowercased lookup), if present.
    pub fn count(&self, word: &str) -> Option<u64> {
        self.counts.get(&word.to_lowercase()).copied()
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct words.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// Whether the table has no entries (never true after construction).
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Natural log of the word's relative frequency, `ln(count / total)`,
    /// with out-of-vocabulary count 1.
    ///
    /// This is the unigram log probability used by the masked-LM stub.
    pub fn log_prob(&self, word: &str) -> f64 {
        let count = self.count(word).unwrap_or(1);
        (count as f64).ln() - (self.total as f64).ln()
    }
}

/// Natural log of the word's raw count; out-of-vocabulary words use count 1
/// and therefore return exactly 0.0.
///
/// Monotone nondecreasing in the count.
pub fn log_unigram_frequency(word: &str, table: &FrequencyTable) -> f64 {
    let count = table.count(word).unwrap_or(1);
    (count as f64).ln()
}
