//! Data model and ingestion: human judgments, leveled articles, aligned
//! Wikipedia pairs, complexity labeling, and grouped fold assignment.
//!
//! Three corpora feed the toolkit:
//!
//! - **Judgment sets**: JSONL records pairing an original sentence with a
//!   system output and 1–5 human scores for fluency, adequacy, and
//!   complexity.
//! - **Leveled articles**: the same article rewritten at reading levels 0–4
//!   (0 the original, 4 the simplest), one sentence per line in
//!   `<article_id>.<level>.txt` files. Sentences and documents get
//!   complexity labels derived from the levels.
//! - **Wikipedia pairs**: aligned simple/standard article texts labeled 0
//!   and 1 for binary complexity.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::fnv1a64;

/// The three judged qualities, in report order.
pub const QUALITIES: [&str; 3] = ["fluency", "adequacy", "complexity"];

/// One human judgment of a system output against its original sentence.
///
/// Scores are Likert means on a 1–5 scale. `(source_id, system_id)` is
/// unique within a dataset: each system is judged once per source sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JudgmentRecord {
    /// Unique id of this record.
    pub record_id: String,
    /// Id of the original (source) sentence; grouping key for fold splits.
    pub source_id: String,
    /// Id of the system that produced `output`.
    pub system_id: String,
    /// The original sentence.
    pub original: String,
    /// The system's simplification of `original`.
    pub output: String,
    /// Grammaticality of the output, 1–5.
    pub fluency: f64,
    /// Meaning preservation relative to the original, 1–5.
    pub adequacy: f64,
    /// Perceived simplicity of the output, 1–5.
    pub complexity: f64,
}

impl JudgmentRecord {
    /// Checks score ranges and id fields.
    pub fn validate(&self) -> Result<()> {
        for id in [&self.record_id, &self.source_id, &self.system_id] {
            if id.trim().is_empty() {
                return Err(Error::validation(format!(
                    "record {:?}: empty id field",
                    self.record_id
                )));
            }
        }
        for (name, value) in [
            ("fluency", self.fluency),
            ("adequacy", self.adequacy),
            ("complexity", self.complexity),
        ] {
            if !value.is_finite() || !(1.0..=5.0).contains(&value) {
                return Err(Error::validation(format!(
                    "record {:?}: {name} score {value} outside [1, 5]",
                    self.record_id
                )));
            }
        }
        Ok(())
    }

    /// Returns the score for a quality name, or `None` for an unknown name.
    pub fn score(&self, quality: &str) -> Option<f64> {
        match quality {
            "fluency" => Some(self.fluency),
            "adequacy" => Some(self.adequacy),
            "complexity" => Some(self.complexity),
            _ => None,
        }
    }
}

/// One version of an article at a specific reading level.
#[derive(Debug, Clone, PartialEq)]
pub struct LeveledDocument {
    /// Article this version belongs to.
    pub article_id: String,
    /// Reading level: 0 is the original (most complex), 4 the simplest.
    pub level: u8,
    /// Sentences in article order; each nonempty.
    pub sentences: Vec<String>,
}

/// Whether a complexity example is a single sentence or a whole document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// One sentence of text.
    Sentence,
    /// A whole document; `text` holds one sentence per line.
    Document,
}

/// A text unit with a numeric complexity label.
///
/// Sentence labels come from the leveling rule (see [`label_sentences`]);
/// document labels are the document's own level, or 0/1 for Wikipedia pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityExample {
    /// Stable unique id for the unit.
    pub unit_id: String,
    /// The text itself. For documents, sentences joined by `'\n'`.
    pub text: String,
    /// Complexity label.
    pub label: f64,
    /// Sentence or document granularity.
    pub granularity: Granularity,
}

/// Maps group ids to fold indices for k-fold cross-validation.
///
/// Every group id belongs to exactly one of the `k` folds, so no group is
/// split between training and test data.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldAssignment {
    k: usize,
    groups: BTreeMap<String, usize>,
}

impl FoldAssignment {
    /// Number of folds.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Fold index of a group, or `None` for an unknown group.
    pub fn fold_of(&self, group_id: &str) -> Option<usize> {
        self.groups.get(group_id).copied()
    }

    /// All `(group_id, fold)` pairs in sorted group order.
    pub fn assignments(&self) -> impl Iterator<Item = (&str, usize)> {
        self.groups.iter().map(|(g, &f)| (g.as_str(), f))
    }

    /// Number of groups assigned to each fold.
    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &f in self.groups.values() {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Trims a sentence and collapses internal whitespace runs to single spaces.
///
/// This is the normalization used before sentences are compared for equality
/// during labeling; no case folding is applied.
pub fn normalize_sentence(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Loads a JSONL judgment file: one JSON object per line.
///
/// Blank lines are rejected (every line must be a record). A syntactically
/// malformed line is a parse error carrying its 1-based line number; a
/// well-formed object with missing fields or out-of-range scores is a
/// validation error. `(source_id, system_id)` pairs must be unique.
pub fn load_judgments(path: impl AsRef<Path>) -> Result<Vec<JudgmentRecord>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    let mut records = Vec::new();
    let mut seen_keys: HashSet<(String, String)> = HashSet::new();
    let mut seen_record_ids: HashSet<String> = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            return Err(Error::parse(line_no, "blank line in judgment file"));
        }
        // Two-stage decode: JSON syntax errors are parse errors, while a
        // well-formed object with the wrong fields is a validation error.
        let value: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| Error::parse(line_no, format!("invalid JSON: {e}")))?;
        let record: JudgmentRecord = serde_json::from_value(value)
            .map_err(|e| Error::validation(format!("line {line_no}: {e}")))?;
        record.validate().map_err(|e| match e {
            Error::Validation(msg) => Error::validation(format!("line {line_no}: {msg}")),
            other => other,
        })?;
        if !seen_record_ids.insert(record.record_id.clone()) {
            return Err(Error::validation(format!(
                "line {line_no}: duplicate record_id {:?}",
                record.record_id
            )));
        }
        let key = (record.source_id.clone(), record.system_id.clone());
        if !seen_keys.insert(key) {
            return Err(Error::validation(format!(
                "line {line_no}: duplicate (source_id, system_id) pair ({:?}, {:?})",
                record.source_id, record.system_id
            )));
        }
        records.push(record);
    }
    Ok(records)
}

/// Writes judgments as JSONL, one record per line, in input order.
pub fn save_judgments(path: impl AsRef<Path>, records: &[JudgmentRecord]) -> Result<()> {
    let path = path.as_ref();
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    for record in records {
        let line = serde_json::to_string(record)
            .map_err(|e| Error::validation(format!("serialize record: {e}")))?;
        writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Loads a directory of leveled articles.
///
/// Files named `<article_id>.<level>.txt` hold one sentence per line; other
/// files are ignored. Blank lines are skipped; a file with no sentences is a
/// validation error. Results are sorted by `(article_id, level)`.
pub fn load_leveled_dir(dir: impl AsRef<Path>) -> Result<Vec<LeveledDocument>> {
    let dir = dir.as_ref();
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;

    let mut docs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some((article_id, level)) = parse_leveled_name(name) else {
            continue;
        };
        let content = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let sentences: Vec<String> = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_owned)
            .collect();
        if sentences.is_empty() {
            return Err(Error::validation(format!(
                "leveled file {name:?} contains no sentences"
            )));
        }
        docs.push(LeveledDocument {
            article_id: article_id.to_owned(),
            level,
            sentences,
        });
    }
    docs.sort_by(|a, b| (a.article_id.as_str(), a.level).cmp(&(b.article_id.as_str(), b.level)));

    let mut seen: HashSet<(String, u8)> = HashSet::new();
    for doc in &docs {
        if !seen.insert((doc.article_id.clone(), doc.level)) {
            return Err(Error::validation(format!(
                "duplicate leveled file for article {:?} level {}",
                doc.article_id, doc.level
            )));
        }
    }
    Ok(docs)
}

/// Splits `<article_id>.<level>.txt` into its parts; `None` if the name does
/// not match (the article id itself may contain dots).
fn parse_leveled_name(name: &str) -> Option<(&str, u8)> {
    let stem = name.strip_suffix(".txt")?;
    let (article_id, level_str) = stem.rsplit_once('.')?;
    if article_id.is_empty() {
        return None;
    }
    let level: u8 = level_str.parse().ok()?;
    if level > 4 {
        return None;
    }
    Some((article_id, level))
}

/// Labels each distinct sentence with the level of the simplest article it
/// appears in — numerically the **maximum** level, since levels run from 0
/// (original) to 4 (simplest).
///
/// A sentence that survives unchanged into a simpler rewrite is evidently
/// already simple, so the simplest containing article decides its label.
/// Sentences are compared after [`normalize_sentence`]; ids are stable
/// content hashes, and the result is sorted by text so the output is
/// independent of document order.
pub fn label_sentences(docs: &[LeveledDocument]) -> Vec<ComplexityExample> {
    let mut labels: BTreeMap<String, u8> = BTreeMap::new();
    for doc in docs {
        for sentence in &doc.sentences {
            let text = normalize_sentence(sentence);
            if text.is_empty() {
                continue;
            }
            labels
                .entry(text)
                .and_modify(|level| *level = (*level).max(doc.level))
                .or_insert(doc.level);
        }
    }
    labels
        .into_iter()
        .map(|(text, level)| ComplexityExample {
            unit_id: format!("s{:016x}", fnv1a64(text.as_bytes())),
            text,
            label: f64::from(level),
            granularity: Granularity::Sentence,
        })
        .collect()
}

/// Labels each document version with its own reading level.
///
/// The document text is its sentences joined by `'\n'`. Output order follows
/// the input.
pub fn label_documents(docs: &[LeveledDocument]) -> Vec<ComplexityExample> {
    docs.iter()
        .map(|doc| ComplexityExample {
            unit_id: format!("{}.{}", doc.article_id, doc.level),
            text: doc.sentences.join("\n"),
            label: f64::from(doc.level),
            granularity: Granularity::Document,
        })
        .collect()
}

/// Loads one side of a Wikipedia pair file: JSONL with `article_id` and
/// `text` fields.
pub fn load_wiki_file(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct WikiLine {
        article_id: String,
        text: String,
    }

    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    let mut articles = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            return Err(Error::parse(line_no, "blank line in article file"));
        }
        let value: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| Error::parse(line_no, format!("invalid JSON: {e}")))?;
        let parsed: WikiLine = serde_json::from_value(value)
            .map_err(|e| Error::validation(format!("line {line_no}: {e}")))?;
        articles.push((parsed.article_id, parsed.text));
    }
    Ok(articles)
}

/// Aligns simple and standard Wikipedia articles by id.
///
/// Simple articles are labeled 0.0 and standard articles 1.0. Only ids
/// present on both sides are kept; duplicates within a side are an error.
/// Pairs come back sorted by article id.
pub fn align_wiki_pairs(
    simple: &[(String, String)],
    standard: &[(String, String)],
) -> Result<Vec<(ComplexityExample, ComplexityExample)>> {
    let simple_map = side_map("simple", simple)?;
    let standard_map = side_map("standard", standard)?;

    let mut pairs = Vec::new();
    for (id, simple_text) in &simple_map {
        let Some(standard_text) = standard_map.get(id) else {
            continue;
        };
        pairs.push((
            ComplexityExample {
                unit_id: format!("{id}.simple"),
                text: (*simple_text).clone(),
                label: 0.0,
                granularity: Granularity::Document,
            },
            ComplexityExample {
                unit_id: format!("{id}.standard"),
                text: (*standard_text).clone(),
                label: 1.0,
                granularity: Granularity::Document,
            },
        ));
    }
    Ok(pairs)
}

fn side_map<'a>(
    side: &str,
    articles: &'a [(String, String)],
) -> Result<BTreeMap<&'a str, &'a String>> {
    let mut map = BTreeMap::new();
    for (id, text) in articles {
        if map.insert(id.as_str(), text).is_some() {
            return Err(Error::validation(format!(
                "duplicate article_id {id:?} in {side} articles"
            )));
        }
    }
    Ok(map)
}

/// Assigns group ids to `k` folds: shuffled by `seed`, then split into
/// contiguous runs whose sizes differ by at most one.
///
/// Duplicate ids in the input collapse to one group. Requires `k >= 2` and
/// at least `k` distinct groups so every fold is nonempty.
pub fn make_folds(group_ids: &[String], k: usize, seed: u64) -> Result<FoldAssignment> {
    let distinct: BTreeSet<&str> = group_ids.iter().map(String::as_str).collect();
    let n = distinct.len();
    if k < 2 {
        return Err(Error::validation(format!(
            "fold count {k} must be at least 2"
        )));
    }
    if n < k {
        return Err(Error::validation(format!(
            "{n} distinct groups cannot fill {k} folds"
        )));
    }

    // Shuffle a sorted list so the assignment depends only on the group set
    // and the seed, not on input order.
    let mut shuffled: Vec<&str> = distinct.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);

    let base = n / k;
    let remainder = n % k;
    let mut groups = BTreeMap::new();
    let mut next = 0usize;
    for fold in 0..k {
        // The first `remainder` folds take one extra group.
        let size = base + usize::from(fold < remainder);
        for group in &shuffled[next..next + size] {
            groups.insert((*group).to_owned(), fold);
        }
        next += size;
    }
    debug_assert_eq!(next, n);
    Ok(FoldAssignment { k, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(source: &str, system: &str) -> JudgmentRecord {
        JudgmentRecord {
            record_id: format!("{source}-{system}"),
            source_id: source.to_owned(),
            system_id: system.to_owned(),
            original: "The committee deliberated at length .".to_owned(),
            output: "The committee talked for a long time .".to_owned(),
            fluency: 4.2,
            adequacy: 3.8,
            complexity: 4.5,
        }
    }

    #[test]
    fn judgments_round_trip_through_jsonl() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("judgments.jsonl");
        let records = vec![
            record("s1", "sysA"),
            record("s1", "sysB"),
            record("s2", "sysA"),
        ];
        save_judgments(&path, &records).unwrap();
        let loaded = load_judgments(&path).unwrap();
        assert_eq!(loaded, records);
    }

    #[test]
    fn malformed_json_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("judgments.jsonl");
        let good = serde_json::to_string(&record("s1", "sysA")).unwrap();
        let mut file = fs::File::create(&path).unwrap();
        writeln!(file, "{good}").unwrap();
        writeln!(file, "{{not json").unwrap();
        drop(file);

        let err = load_judgments(&path).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_field_is_a_validation_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("judgments.jsonl");
        fs::write(&path, "{\"record_id\": \"r1\", \"source_id\": \"s1\"}\n").unwrap();

        let err = load_judgments(&path).unwrap_err();
        match err {
            Error::Validation(msg) => {
                assert!(
                    msg.contains("line 1"),
                    "message should locate the line: {msg}"
                );
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_score_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("judgments.jsonl");
        let mut bad = record("s1", "sysA");
        bad.fluency = 5.4;
        save_judgments(&path, &[bad]).unwrap();

        let err = load_judgments(&path).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "got {err:?}");
    }

    #[test]
    fn duplicate_source_system_pair_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("judgments.jsonl");
        let mut second = record("s1", "sysA");
        second.record_id = "other".to_owned();
        save_judgments(&path, &[record("s1", "sysA"), second]).unwrap();

        let err = load_judgments(&path).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("sysA"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn score_lookup_by_quality_name() {
        let r = record("s1", "sysA");
        assert_eq!(r.score("fluency"), Some(4.2));
        assert_eq!(r.score("adequacy"), Some(3.8));
        assert_eq!(r.score("complexity"), Some(4.5));
        assert_eq!(r.score("fluentness"), None);
    }

    fn doc(article: &str, level: u8, sentences: &[&str]) -> LeveledDocument {
        LeveledDocument {
            article_id: article.to_owned(),
            level,
            sentences: sentences.iter().map(|s| (*s).to_owned()).collect(),
        }
    }

    #[test]
    fn shared_sentence_gets_the_simplest_level() {
        // Level 4 is the simplest rewrite, so a sentence seen at levels
        // {1, 3} takes label 3.
        let docs = vec![
            doc(
                "a",
                1,
                &["The cat sat on the mat .", "It was quite displeased ."],
            ),
            doc("a", 3, &["The cat sat on the mat ."]),
        ];
        let examples = label_sentences(&docs);
        let shared = examples
            .iter()
            .find(|e| e.text == "The cat sat on the mat .")
            .unwrap();
        assert_eq!(shared.label, 3.0);
        let unique = examples
            .iter()
            .find(|e| e.text == "It was quite displeased .")
            .unwrap();
        assert_eq!(unique.label, 1.0);
    }

    #[test]
    fn labeling_normalizes_whitespace_before_matching() {
        let docs = vec![
            doc("a", 0, &["  The cat   sat .  "]),
            doc("a", 4, &["The cat sat ."]),
        ];
        let examples = label_sentences(&docs);
        assert_eq!(examples.len(), 1);
        assert_eq!(examples[0].text, "The cat sat .");
        assert_eq!(examples[0].label, 4.0);
    }

    #[test]
    fn document_labels_are_their_own_level() {
        let docs = vec![doc("a", 2, &["One .", "Two ."]), doc("b", 0, &["Three ."])];
        let examples = label_documents(&docs);
        assert_eq!(examples.len(), 2);
        assert_eq!(examples[0].unit_id, "a.2");
        assert_eq!(examples[0].text, "One .\nTwo .");
        assert_eq!(examples[0].label, 2.0);
        assert_eq!(examples[1].label, 0.0);
        assert_eq!(examples[1].granularity, Granularity::Document);
    }

    #[test]
    fn leveled_dir_parses_names_and_skips_strays() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("geology.0.txt"), "Rocks are hard .\n").unwrap();
        fs::write(dir.path().join("geology.3.txt"), "Lithology is hard .\n\n").unwrap();
        fs::write(dir.path().join("notes.md"), "not an article").unwrap();
        fs::write(dir.path().join("v1.2.geology.1.txt"), "Dotted id .\n").unwrap();

        let docs = load_leveled_dir(dir.path()).unwrap();
        let ids: Vec<(&str, u8)> = docs
            .iter()
            .map(|d| (d.article_id.as_str(), d.level))
            .collect();
        assert_eq!(
            ids,
            vec![("geology", 0), ("geology", 3), ("v1.2.geology", 1)]
        );
    }

    #[test]
    fn empty_leveled_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("empty.0.txt"), "\n\n").unwrap();
        let err = load_leveled_dir(dir.path()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "got {err:?}");
    }

    #[test]
    fn wiki_alignment_pairs_shared_ids_with_binary_labels() {
        let simple = vec![
            ("cats".to_owned(), "Cats are small animals .".to_owned()),
            ("rocks".to_owned(), "Rocks are hard .".to_owned()),
        ];
        let standard = vec![
            (
                "rocks".to_owned(),
                "Rocks are consolidated mineral matter .".to_owned(),
            ),
            (
                "physics".to_owned(),
                "Physics is the study of matter .".to_owned(),
            ),
        ];
        let pairs = align_wiki_pairs(&simple, &standard).unwrap();
        assert_eq!(pairs.len(), 1);
        let (s, t) = &pairs[0];
        assert_eq!(s.unit_id, "rocks.simple");
        assert_eq!(s.label, 0.0);
        assert_eq!(t.unit_id, "rocks.standard");
        assert_eq!(t.label, 1.0);
    }

    #[test]
    fn duplicate_wiki_id_is_rejected() {
        let simple = vec![
            ("cats".to_owned(), "one".to_owned()),
            ("cats".to_owned(), "two".to_owned()),
        ];
        let err = align_wiki_pairs(&simple, &[]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "got {err:?}");
    }

    #[test]
    fn folds_partition_all_groups_with_balanced_sizes() {
        let groups: Vec<String> = (0..23).map(|i| format!("g{i:02}")).collect();
        let folds = make_folds(&groups, 10, 7).unwrap();
        assert_eq!(folds.k(), 10);

        // 23 groups over 10 folds: three folds of 3 and seven of 2.
        let mut sizes = folds.fold_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 2, 2, 2, 2, 3, 3, 3]);

        for g in &groups {
            let fold = folds.fold_of(g).expect("every group is assigned");
            assert!(fold < 10);
        }
    }

    #[test]
    fn folds_are_deterministic_and_order_independent() {
        let groups: Vec<String> = (0..12).map(|i| format!("g{i}")).collect();
        let mut reversed = groups.clone();
        reversed.reverse();
        let a = make_folds(&groups, 4, 99).unwrap();
        let b = make_folds(&reversed, 4, 99).unwrap();
        assert_eq!(a, b);

        let c = make_folds(&groups, 4, 100).unwrap();
        assert_ne!(a, c, "a different seed should reshuffle 12 groups");
    }

    #[test]
    fn too_few_groups_for_k_is_an_error() {
        let groups: Vec<String> = (0..5).map(|i| format!("g{i}")).collect();
        assert!(make_folds(&groups, 10, 0).is_err());
        assert!(make_folds(&groups, 1, 0).is_err());
    }
}
