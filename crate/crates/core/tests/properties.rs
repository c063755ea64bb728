//! Randomized property tests over the public API: invariants that should
//! hold for arbitrary inputs, not just the hand-picked fixtures in the
//! unit tests.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use simpeval_core::corpus::{label_sentences, make_folds, LeveledDocument};
use simpeval_core::encoders::{EncoderSpec, StubEncoder, TextEncoder};
use simpeval_core::eval::{kendall, pearson, spearman};
use simpeval_core::features::tokenize;
use simpeval_core::qemodel::chunk_document;
use simpeval_core::refmetrics::{sari, sentence_bleu};

// ---- strategies -----------------------------------------------------------

/// Sentence-ish text: words of letters, digits, and clitic apostrophes,
/// separated by runs of whitespace.
fn sentence_strategy() -> impl Strategy<Value = String> {
    let word = proptest::string::string_regex("[A-Za-z]{1,8}('(s|t|ll|re|ve|d|m))?").unwrap();
    proptest::collection::vec(word, 0..12).prop_map(|words| words.join(" "))
}

fn token_list() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(
        proptest::sample::select(vec!["a", "b", "c", "d", "e", "f", "g", "h", "the", "cat"])
            .prop_map(str::to_owned),
        0..10,
    )
}

// ---- tokenizer ------------------------------------------------------------

proptest! {
    #[test]
    fn tokenization_loses_no_characters(text in sentence_strategy()) {
        let rejoined: String = tokenize(&text)
            .iter()
            .map(|t| t.surface.as_str())
            .collect();
        let expected: String = text
            .replace(['\u{2019}', '\u{2018}'], "'")
            .split_whitespace()
            .collect();
        prop_assert_eq!(rejoined, expected);
    }

    #[test]
    fn tokenization_is_whitespace_insensitive(words in proptest::collection::vec("[a-z]{1,6}", 1..8)) {
        let single = words.join(" ");
        let messy = words.join("  \t ");
        let surfaces = |text: &str| {
            tokenize(text).into_iter().map(|t| t.surface).collect::<Vec<_>>()
        };
        prop_assert_eq!(surfaces(&single), surfaces(&messy));
    }
}

// ---- sentence labeling ----------------------------------------------------

proptest! {
    /// The labeling rule, checked against a brute-force oracle: a sentence
    /// that appears at several reading levels gets the maximum level.
    #[test]
    fn sentence_labels_take_the_maximum_level(
        assignments in proptest::collection::vec(
            (0u8..5, proptest::collection::vec(proptest::sample::select(vec![
                "the cat sat", "a dog ran", "birds fly south", "rivers reach the sea",
                "it rained all day", "the town grew",
            ]), 1..5)),
            1..8,
        )
    ) {
        let docs: Vec<LeveledDocument> = assignments
            .iter()
            .enumerate()
            .map(|(i, (level, sentences))| LeveledDocument {
                article_id: format!("article{i}"),
                level: *level,
                sentences: sentences.iter().map(|s| (*s).to_owned()).collect(),
            })
            .collect();

        // Oracle: direct max over every (sentence, level) occurrence.
        let mut expected: BTreeMap<&str, u8> = BTreeMap::new();
        for (level, sentences) in &assignments {
            for sentence in sentences {
                let entry = expected.entry(sentence).or_insert(*level);
                *entry = (*entry).max(*level);
            }
        }

        let examples = label_sentences(&docs);
        prop_assert_eq!(examples.len(), expected.len());
        for example in &examples {
            let want = expected[example.text.as_str()];
            prop_assert_eq!(example.label, f64::from(want), "sentence {}", example.text);
        }
    }
}

// ---- fold assignment ------------------------------------------------------

proptest! {
    #[test]
    fn folds_partition_groups_evenly(
        group_count in 4usize..40,
        k in 2usize..5,
        seed in any::<u64>(),
    ) {
        prop_assume!(group_count >= k);
        let groups: Vec<String> = (0..group_count).map(|i| format!("g{i}")).collect();
        let folds = make_folds(&groups, k, seed).unwrap();

        // Every group lands in exactly one fold, and sizes differ by ≤ 1.
        let mut seen = BTreeSet::new();
        for (group, fold) in folds.assignments() {
            prop_assert!(fold < k);
            prop_assert!(seen.insert(group.to_owned()));
        }
        prop_assert_eq!(seen.len(), group_count);
        let sizes = folds.fold_sizes();
        let min = sizes.iter().min().unwrap();
        let max = sizes.iter().max().unwrap();
        prop_assert!(max - min <= 1, "unbalanced folds: {:?}", sizes);

        // Same inputs, same assignment; duplicated ids change nothing.
        prop_assert_eq!(&folds, &make_folds(&groups, k, seed).unwrap());
        let mut doubled = groups.clone();
        doubled.extend(groups.iter().cloned());
        prop_assert_eq!(&folds, &make_folds(&doubled, k, seed).unwrap());
    }
}

// ---- reference metrics ----------------------------------------------------

proptest! {
    #[test]
    fn metric_outputs_stay_in_unit_range(
        source in token_list(),
        candidate in token_list(),
        refs in proptest::collection::vec(token_list(), 1..4),
    ) {
        let bleu = sentence_bleu(&candidate, &refs);
        prop_assert!((0.0..=1.0).contains(&bleu), "bleu {}", bleu);

        let sari_score = sari(&source, &candidate, &refs);
        prop_assert!((0.0..=1.0).contains(&sari_score), "sari {}", sari_score);

        // Shuffled reference order changes neither metric.
        let mut reversed = refs.clone();
        reversed.reverse();
        prop_assert_eq!(bleu, sentence_bleu(&candidate, &reversed));
        prop_assert_eq!(sari_score, sari(&source, &candidate, &reversed));
    }

    #[test]
    fn bleu_of_a_candidate_against_itself_is_perfect(candidate in token_list()) {
        prop_assume!(!candidate.is_empty());
        let bleu = sentence_bleu(&candidate, std::slice::from_ref(&candidate));
        prop_assert!((bleu - 1.0).abs() < 1e-12, "bleu {}", bleu);
    }
}

// ---- chunking -------------------------------------------------------------

proptest! {
    #[test]
    fn chunks_respect_budget_and_partition_sentences(
        sentences in proptest::collection::vec(sentence_strategy(), 0..20),
        budget in 1usize..32,
    ) {
        let encoder = StubEncoder::with_spec(
            EncoderSpec { name: "stub".to_owned(), dimension: 8, max_units: 512 },
            0,
        )
        .unwrap();
        let chunks = chunk_document(&encoder, &sentences, budget).unwrap();

        let mut cursor = 0usize;
        for chunk in &chunks {
            prop_assert!(chunk.subword_length <= budget);
            prop_assert_eq!(chunk.span.0, cursor);
            prop_assert!(chunk.span.1 > chunk.span.0);
            if !chunk.truncated {
                let member_total: usize = (chunk.span.0..chunk.span.1)
                    .map(|i| encoder.subword_tokenize(&sentences[i]).len())
                    .sum();
                prop_assert_eq!(chunk.subword_length, member_total);
                prop_assert_eq!(
                    encoder.subword_tokenize(&chunk.text).len(),
                    chunk.subword_length
                );
            } else {
                prop_assert!(encoder.subword_tokenize(&chunk.text).len() <= budget);
            }
            cursor = chunk.span.1;
        }
        prop_assert_eq!(cursor, sentences.len());
    }
}

// ---- correlations ---------------------------------------------------------

proptest! {
    #[test]
    fn correlations_are_symmetric_and_bounded(
        pairs in proptest::collection::vec((-50i32..50, -50i32..50), 2..40)
    ) {
        let x: Vec<f64> = pairs.iter().map(|&(a, _)| f64::from(a)).collect();
        let y: Vec<f64> = pairs.iter().map(|&(_, b)| f64::from(b)).collect();

        for stat in [pearson, spearman, kendall] {
            let forward = stat(&x, &y).unwrap();
            let backward = stat(&y, &x).unwrap();
            prop_assert_eq!(forward, backward);
            if let Some(v) = forward {
                prop_assert!((-1.0..=1.0).contains(&v), "out of range: {}", v);
            }
        }
    }

    #[test]
    fn rank_correlations_survive_monotone_relabeling(
        values in proptest::collection::vec((-20i32..20, -20i32..20), 3..30)
    ) {
        let x: Vec<f64> = values.iter().map(|&(a, _)| f64::from(a)).collect();
        let y: Vec<f64> = values.iter().map(|&(_, b)| f64::from(b)).collect();
        // Strictly increasing map applied to x: ranks are unchanged.
        let mapped: Vec<f64> = x.iter().map(|v| v.powi(3) + 2.0 * v + 7.0).collect();

        let close = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(a), Some(b)) => (a - b).abs() < 1e-9,
            (None, None) => true,
            _ => false,
        };
        prop_assert!(close(spearman(&x, &y).unwrap(), spearman(&mapped, &y).unwrap()));
        prop_assert!(close(kendall(&x, &y).unwrap(), kendall(&mapped, &y).unwrap()));
    }
}
