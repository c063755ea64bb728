//! Reference-based comparison metrics: sentence-level BLEU and SARI.
//!
//! Both metrics operate on token lists (tokenization happens upstream) and
//! lowercase their inputs first, so they are invariant under consistent
//! re-casing. Fixed conventions, chosen for determinism:
//!
//! - **BLEU**: modified n-gram precisions for n = 1..4 with clipped counts;
//!   add-one smoothing `(m + 1) / (t + 1)` applies only for n ≥ 2 and only
//!   when the raw precision is 0; a zero unigram precision (or an empty
//!   candidate) short-circuits to 0.0. The brevity penalty compares against
//!   the reference whose length is closest to the candidate's (ties prefer
//!   the shorter reference).
//! - **SARI**: mean over n = 1..4 of (keep F1 + add F1 + delete precision)/3
//!   with **set** semantics per n-gram order. Keep compares the source ∩
//!   candidate n-grams against source ∩ (union of references); add compares
//!   candidate − source against union − source; delete scores precision of
//!   source − candidate against source − union. An empty hypothesis set has
//!   precision 1, an empty reference set has recall 1 (so an operation with
//!   nothing to do scores 1), and F1 is 0 when P + R = 0.

use std::collections::{HashMap, HashSet};

/// Multiset of n-grams of one order over a lowercased token list.
#[derive(Debug, Clone, Default)]
pub struct NGramMultiset {
    counts: HashMap<Vec<String>, usize>,
}

impl NGramMultiset {
    /// Collects all n-grams of order `n` from `tokens` (already lowercased
    /// by the caller). Shorter-than-`n` inputs yield an empty multiset.
    pub fn from_tokens(tokens: &[String], n: usize) -> Self {
        let mut counts = HashMap::new();
        if n >= 1 && tokens.len() >= n {
            for window in tokens.windows(n) {
                *counts.entry(window.to_vec()).or_insert(0) += 1;
            }
        }
        NGramMultiset { counts }
    }

    /// Count of one n-gram.
    pub fn count(&self, gram: &[String]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    /// Total number of n-gram occurrences.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Sum over this multiset's n-grams of `min(count, cap.count)` — the
    /// clipped match count of modified n-gram precision.
    pub fn clipped_matches(&self, cap: &NGramMultiset) -> usize {
        self.counts
            .iter()
            .map(|(gram, &c)| c.min(cap.count(gram)))
            .sum()
    }

    /// Pointwise maximum with another multiset, used to combine references.
    pub fn max_with(mut self, other: &NGramMultiset) -> Self {
        for (gram, &count) in &other.counts {
            let entry = self.counts.entry(gram.clone()).or_insert(0);
            *entry = (*entry).max(count);
        }
        self
    }
}

fn lowercase(tokens: &[String]) -> Vec<String> {
    tokens.iter().map(|t| t.to_lowercase()).collect()
}

/// Sentence-level BLEU of a candidate against one or more references.
///
/// Returns a value in [0, 1]. An empty candidate or an empty reference list
/// scores 0.0 rather than erroring.
pub fn sentence_bleu(candidate: &[String], references: &[Vec<String>]) -> f64 {
    let candidate = lowercase(candidate);
    let references: Vec<Vec<String>> = references.iter().map(|r| lowercase(r)).collect();
    if candidate.is_empty() || references.is_empty() {
        return 0.0;
    }

    let mut log_precision_sum = 0.0;
    for n in 1..=4usize {
        let cand_grams = NGramMultiset::from_tokens(&candidate, n);
        let cap = references
            .iter()
            .map(|r| NGramMultiset::from_tokens(r, n))
            .fold(NGramMultiset::default(), |acc, m| acc.max_with(&m));
        let matches = cand_grams.clipped_matches(&cap);
        let total = cand_grams.total();

        let precision = if n == 1 {
            // Unigram precision is never smoothed; zero overlap means 0.
            if matches == 0 {
                return 0.0;
            }
            matches as f64 / total as f64
        } else if matches == 0 {
            (matches + 1) as f64 / (total + 1) as f64
        } else {
            matches as f64 / total as f64
        };
        log_precision_sum += precision.ln();
    }
    let geometric_mean = (log_precision_sum / 4.0).exp();

    let c = candidate.len();
    let r = closest_reference_length(c, &references);
    let brevity_penalty = if c >= r {
        1.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    };
    (brevity_penalty * geometric_mean).clamp(0.0, 1.0)
}

/// Reference length closest to the candidate length; ties prefer shorter.
fn closest_reference_length(candidate_len: usize, references: &[Vec<String>]) -> usize {
    let mut best_len = references[0].len();
    let mut best_dist = best_len.abs_diff(candidate_len);
    for reference in &references[1..] {
        let len = reference.len();
        let dist = len.abs_diff(candidate_len);
        if dist < best_dist || (dist == best_dist && len < best_len) {
            best_len = len;
            best_dist = dist;
        }
    }
    best_len
}

/// SARI score of a candidate simplification against the source sentence and
/// one or more references. Returns a value in [0, 1].
pub fn sari(source: &[String], candidate: &[String], references: &[Vec<String>]) -> f64 {
    let source = lowercase(source);
    let candidate = lowercase(candidate);
    let references: Vec<Vec<String>> = references.iter().map(|r| lowercase(r)).collect();

    let mut order_sum = 0.0;
    for n in 1..=4usize {
        let s = gram_set(&source, n);
        let c = gram_set(&candidate, n);
        let mut r_union: HashSet<Vec<String>> = HashSet::new();
        for reference in &references {
            r_union.extend(gram_set(reference, n));
        }

        // Keep: n-grams retained from the source.
        let keep_hyp: HashSet<_> = s.intersection(&c).cloned().collect();
        let keep_ref: HashSet<_> = s.intersection(&r_union).cloned().collect();
        let keep_f1 = f1(
            precision(&keep_hyp, &keep_ref),
            recall(&keep_hyp, &keep_ref),
        );

        // Add: n-grams introduced beyond the source.
        let add_hyp: HashSet<_> = c.difference(&s).cloned().collect();
        let add_ref: HashSet<_> = r_union.difference(&s).cloned().collect();
        let add_f1 = f1(precision(&add_hyp, &add_ref), recall(&add_hyp, &add_ref));

        // Delete: n-grams dropped from the source; precision only.
        let del_hyp: HashSet<_> = s.difference(&c).cloned().collect();
        let del_ref: HashSet<_> = s.difference(&r_union).cloned().collect();
        let del_p = precision(&del_hyp, &del_ref);

        order_sum += (keep_f1 + add_f1 + del_p) / 3.0;
    }
    (order_sum / 4.0).clamp(0.0, 1.0)
}

fn gram_set(tokens: &[String], n: usize) -> HashSet<Vec<String>> {
    if tokens.len() < n {
        return HashSet::new();
    }
    tokens.windows(n).map(|w| w.to_vec()).collect()
}

/// |hyp ∩ ref| / |hyp|, with the empty-hypothesis convention P = 1.
fn precision(hyp: &HashSet<Vec<String>>, reference: &HashSet<Vec<String>>) -> f64 {
    if hyp.is_empty() {
        return 1.0;
    }
    hyp.intersection(reference).count() as f64 / hyp.len() as f64
}

/// |hyp ∩ ref| / |ref|, with the empty-reference convention R = 1.
fn recall(hyp: &HashSet<Vec<String>>, reference: &HashSet<Vec<String>>) -> f64 {
    if reference.is_empty() {
        return 1.0;
    }
    hyp.intersection(reference).count() as f64 / reference.len() as f64
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}
