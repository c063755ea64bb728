//! Subcommand implementations.
//!
//! Every runner reads its inputs via the paths in the run config, writes
//! its artifacts into the output directory, and returns the artifact file
//! names for the run manifest. Output bytes depend only on the config file
//! contents, never on wall-clock time or parallelism, so reruns of the
//! same config are byte-identical under the stub encoder.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use simpeval_core::corpus::{self, ComplexityExample};
use simpeval_core::encoders::{StubEncoder, TextEncoder};
use simpeval_core::eval::{self, CorrelationReport, ReportLayout};
use simpeval_core::features::{
    extract_features, tokenize, FeatureVector, FrequencyTable, ParseTree,
};
use simpeval_core::qemodel::{
    self, build_model, chunk_document, linreg_fit, linreg_predict, load_checkpoint,
    predict_document, save_checkpoint, HeadConfig, HeadMode, LinearModel, Prediction, TrainConfig,
    TrainExample,
};
use simpeval_core::refmetrics::{sari, sentence_bleu};
use simpeval_core::{Error, Result};

use crate::config::{EvalGranularity, EvalMode, RunConfig};

/// Extracts the five features for every line of the sentences file.
///
/// With a parses file, line `i` must hold the bracketed tree for sentence
/// `i` (blank line = no parse, flagged in the output). Writes one
/// `FeatureVector` JSON object per input line to `features.jsonl`.
pub fn features(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let sentences = read_lines(cfg.paths.require("sentences")?)?;
    let table = FrequencyTable::load_tsv(cfg.paths.require("frequencies")?)?;

    let trees: Vec<Option<ParseTree>> = match &cfg.paths.parses {
        Some(_) => {
            let parse_lines = read_lines(cfg.paths.require("parses")?)?;
            if parse_lines.len() != sentences.len() {
                return Err(Error::validation(format!(
                    "sentences file has {} lines but parses file has {}; \
                     first unmatched line is {}",
                    sentences.len(),
                    parse_lines.len(),
                    sentences.len().min(parse_lines.len()) + 1
                )));
            }
            parse_lines
                .iter()
                .enumerate()
                .map(|(i, line)| {
                    if line.trim().is_empty() {
                        Ok(None)
                    } else {
                        ParseTree::parse(line)
                            .map(Some)
                            .map_err(|e| Error::parse(i + 1, format!("bad parse tree: {e}")))
                    }
                })
                .collect::<Result<_>>()?
        }
        None => vec![None; sentences.len()],
    };

    let mut vectors = Vec::with_capacity(sentences.len());
    for (i, (sentence, tree)) in sentences.iter().zip(&trees).enumerate() {
        let tokens = tokenize(sentence);
        let vector = extract_features(&tokens, tree.as_ref(), &table)
            .map_err(|e| Error::validation(format!("line {}: {e}", i + 1)))?;
        vectors.push(vector);
    }

    let artifact = write_jsonl(out, "features.jsonl", &vectors)?;
    Ok(vec![artifact])
}

/// One line of the metrics input file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricsRecord {
    /// The sentence being simplified.
    source: String,
    /// The system output to score.
    output: String,
    /// Human reference simplifications; at least one.
    references: Vec<String>,
}

/// BLEU and SARI for one record.
#[derive(Debug, Serialize)]
struct MetricScores {
    bleu: f64,
    sari: f64,
}

/// Scores BLEU and SARI for every record of the metrics file.
///
/// Texts are run through the toolkit tokenizer so punctuation splits the
/// same way everywhere. Writes one `{bleu, sari}` object per input record
/// to `metrics.jsonl`.
pub fn metrics(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let path = cfg.paths.require("metrics")?;
    let records: Vec<MetricsRecord> = read_jsonl(path)?;

    let mut scores = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        if record.references.is_empty() {
            return Err(Error::parse(i + 1, "record has no references"));
        }
        let source = surfaces(&record.source);
        let output = surfaces(&record.output);
        let references: Vec<Vec<String>> = record.references.iter().map(|r| surfaces(r)).collect();
        scores.push(MetricScores {
            bleu: sentence_bleu(&output, &references),
            sari: sari(&source, &output, &references),
        });
    }

    let artifact = write_jsonl(out, "metrics.jsonl", &scores)?;
    Ok(vec![artifact])
}

/// Cross-validates the two feature baselines on the judgments file.
///
/// `sentence_length` predicts every quality with the raw token count of
/// the output; `linreg` fits one five-feature least-squares model per
/// quality on each fold's training split. Both are scored by pooled k-fold
/// cross-validation grouped by source sentence, and land in one report
/// (`baselines.txt` / `baselines.json`).
pub fn baselines(cfg: &RunConfig, out: &Path, jobs: usize) -> Result<Vec<String>> {
    let records = corpus::load_judgments(cfg.paths.require("judgments")?)?;
    let table = FrequencyTable::load_tsv(cfg.paths.require("frequencies")?)?;

    let mut examples = Vec::with_capacity(records.len());
    for record in &records {
        examples.push(TrainExample::from_judgment(record).with_features(&table)?);
    }
    let folds = make_folds_for(&examples, cfg.eval.folds, cfg.seed)?;
    let qualities = ["fluency", "adequacy", "complexity"];

    let length_pairs = eval::cross_validate(
        &examples,
        &folds,
        cfg.seed,
        jobs,
        |_train, _seed| Ok(()),
        |_unit_model: &(), example| {
            let length = output_features(example)?.sentence_length;
            Ok(constant_prediction(&qualities, length))
        },
    )?;

    let linreg_pairs = eval::cross_validate(
        &examples,
        &folds,
        cfg.seed,
        jobs,
        |train, _seed| {
            let rows: Vec<[f64; 5]> = train
                .iter()
                .map(|ex| Ok(output_features(ex)?.as_array()))
                .collect::<Result<_>>()?;
            qualities
                .iter()
                .map(|&quality| {
                    let targets: Vec<f64> = train
                        .iter()
                        .map(|ex| label_of(ex, quality))
                        .collect::<Result<_>>()?;
                    Ok((quality, linreg_fit(&rows, &targets)?))
                })
                .collect::<Result<Vec<(&str, LinearModel)>>>()
        },
        |models, example| {
            let row = output_features(example)?.as_array();
            let values = models
                .iter()
                .map(|(quality, model)| ((*quality).to_owned(), linreg_predict(model, &row)))
                .collect();
            Ok(Prediction { values })
        },
    )?;

    let mut report = CorrelationReport::new();
    insert_pooled(&mut report, "sentence_length", &length_pairs)?;
    insert_pooled(&mut report, "linreg", &linreg_pairs)?;
    write_report(out, "baselines", &report)
}

/// Trains a model on the judgments file and writes `model.ckpt` plus
/// `loss.txt` (one `epoch<TAB>loss` line per epoch).
pub fn train(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let head = cfg.head.head_config();
    let records = corpus::load_judgments(cfg.paths.require("judgments")?)?;
    let table = feature_table(cfg, &head)?;
    let encoder = cfg.encoder.build(cfg.seed)?;

    let mut examples = Vec::with_capacity(records.len());
    for record in &records {
        examples.push(shape_example(
            TrainExample::from_judgment(record),
            &head,
            table.as_ref(),
        )?);
    }

    let mut model = build_model(head, cfg.encoder.spec(), cfg.seed)?;
    let history = qemodel::train(&mut model, &examples, &encoder, &cfg.train_config())?;

    let checkpoint = out.join("model.ckpt");
    save_checkpoint(&model, &checkpoint)?;

    let mut log = String::new();
    for (epoch, loss) in history.iter().enumerate() {
        log.push_str(&format!("{}\t{loss}\n", epoch + 1));
    }
    let log_artifact = write_text(out, "loss.txt", &log)?;
    Ok(vec!["model.ckpt".to_owned(), log_artifact])
}

/// Runs the evaluation protocol selected by `[eval] mode` and writes
/// `report.txt` / `report.json`.
pub fn evaluate(cfg: &RunConfig, out: &Path, jobs: usize) -> Result<Vec<String>> {
    let report = match cfg.eval.mode {
        EvalMode::Qe => evaluate_qe(cfg, jobs)?,
        EvalMode::Complexity => evaluate_complexity(cfg, jobs)?,
        EvalMode::Transfer => evaluate_transfer(cfg)?,
    };
    write_report(out, "report", &report)
}

/// Pooled cross-validation of the configured model on human judgments:
/// each fold trains from scratch on the other folds and predicts its own.
fn evaluate_qe(cfg: &RunConfig, jobs: usize) -> Result<CorrelationReport> {
    let head = cfg.head.head_config();
    let records = corpus::load_judgments(cfg.paths.require("judgments")?)?;
    let table = feature_table(cfg, &head)?;
    let encoder = cfg.encoder.build(cfg.seed)?;

    let mut examples = Vec::with_capacity(records.len());
    for record in &records {
        examples.push(shape_example(
            TrainExample::from_judgment(record),
            &head,
            table.as_ref(),
        )?);
    }
    let folds = make_folds_for(&examples, cfg.eval.folds, cfg.seed)?;
    let pooled = cross_validate_model(cfg, &head, &encoder, &examples, &folds, jobs)?;

    let mut report = CorrelationReport::new();
    insert_pooled(&mut report, &model_label(&head), &pooled)?;
    Ok(report)
}

/// Pooled cross-validation of a single-quality complexity predictor on a
/// leveled corpus, at sentence or document granularity.
fn evaluate_complexity(cfg: &RunConfig, jobs: usize) -> Result<CorrelationReport> {
    let head = cfg.head.head_config();
    if head.qualities != ["complexity"] {
        return Err(Error::validation(
            "complexity evaluation needs a head with the single quality \"complexity\"",
        ));
    }
    if head.dual_encoder {
        return Err(Error::validation(
            "complexity evaluation scores one text per unit; disable dual_encoder",
        ));
    }

    let docs = corpus::load_leveled_dir(cfg.paths.require("leveled_dir")?)?;
    let units = match cfg.eval.granularity {
        EvalGranularity::Sentence => corpus::label_sentences(&docs),
        EvalGranularity::Document => corpus::label_documents(&docs),
    };
    let table = feature_table(cfg, &head)?;
    let encoder = cfg.encoder.build(cfg.seed)?;

    let mut examples = Vec::with_capacity(units.len());
    for unit in &units {
        examples.push(shape_example(
            TrainExample::from_complexity(unit),
            &head,
            table.as_ref(),
        )?);
    }
    let folds = make_folds_for(&examples, cfg.eval.folds, cfg.seed)?;
    let pooled = cross_validate_model(cfg, &head, &encoder, &examples, &folds, jobs)?;

    let mut report = CorrelationReport::new();
    insert_pooled(&mut report, &model_label(&head), &pooled)?;
    Ok(report)
}

/// Applies a fixed checkpoint to aligned simple/standard article pairs
/// (simple = 0, standard = 1) and correlates its document scores with the
/// labels. The checkpoint pins its own encoder spec and seed; documents
/// longer than the encoder window are chunked and averaged.
fn evaluate_transfer(cfg: &RunConfig) -> Result<CorrelationReport> {
    let model = load_checkpoint(cfg.paths.require("checkpoint")?)?;
    let head = model.config().clone();
    if head.k() != 1 {
        return Err(Error::validation(format!(
            "transfer evaluation needs a single-quality checkpoint, got {} qualities",
            head.k()
        )));
    }
    if head.dual_encoder {
        return Err(Error::validation(
            "transfer evaluation scores one text per article; the checkpoint is dual-encoder",
        ));
    }

    let simple = corpus::load_wiki_file(cfg.paths.require("wiki_simple")?)?;
    let standard = corpus::load_wiki_file(cfg.paths.require("wiki_standard")?)?;
    let pairs = corpus::align_wiki_pairs(&simple, &standard)?;
    let mut units: Vec<ComplexityExample> = Vec::with_capacity(pairs.len() * 2);
    for (simple_side, standard_side) in pairs {
        units.push(simple_side);
        units.push(standard_side);
    }

    let table = feature_table(cfg, &head)?;
    let encoder = checkpoint_encoder(&model)?;
    let quality = head.qualities[0].clone();

    let stat = eval::transfer_evaluate(&units, |unit| {
        let sentences: Vec<String> = unit.text.lines().map(str::to_owned).collect();
        predict_document(&model, &encoder, table.as_ref(), &sentences)
    })?;

    let mut report = CorrelationReport::new();
    report.insert(model_label(&head), quality, stat);
    Ok(report)
}

/// Splits the sentences file (one document) into encoder-budget chunks,
/// written to `chunks.jsonl`. With a checkpoint configured, also scores
/// the document by length-weighted chunk average into `score.json`.
pub fn chunk(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let sentences = read_lines(cfg.paths.require("sentences")?)?;
    let encoder = cfg.encoder.build(cfg.seed)?;
    let chunks = chunk_document(&encoder, &sentences, encoder.spec().max_units)?;

    let mut artifacts = vec![write_jsonl(out, "chunks.jsonl", &chunks)?];

    if cfg.paths.checkpoint.is_some() {
        let model = load_checkpoint(cfg.paths.require("checkpoint")?)?;
        let head = model.config().clone();
        let table = feature_table(cfg, &head)?;
        let model_encoder = checkpoint_encoder(&model)?;
        let score = predict_document(&model, &model_encoder, table.as_ref(), &sentences)?;

        #[derive(Serialize)]
        struct DocumentScore {
            quality: String,
            score: f64,
        }
        let body = to_pretty_json(&DocumentScore {
            quality: head.qualities[0].clone(),
            score,
        })?;
        artifacts.push(write_text(out, "score.json", &body)?);
    }

    Ok(artifacts)
}

/// Reads a whole text file into lines.
fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(str::to_owned).collect())
}

/// Reads a JSONL file, reporting the 1-based line of the first bad record.
fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    read_lines(path)?
        .iter()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| serde_json::from_str(line).map_err(|e| Error::parse(i + 1, e.to_string())))
        .collect()
}

/// Token surfaces of a text under the toolkit tokenizer.
fn surfaces(text: &str) -> Vec<String> {
    tokenize(text).into_iter().map(|t| t.surface).collect()
}

/// Loads the frequency table iff the head uses the feature channel.
fn feature_table(cfg: &RunConfig, head: &HeadConfig) -> Result<Option<FrequencyTable>> {
    if head.use_features {
        Ok(Some(FrequencyTable::load_tsv(
            cfg.paths.require("frequencies")?,
        )?))
    } else {
        Ok(None)
    }
}

/// Drops the input channels the head does not consume and fills in the
/// ones it does: the forward pass rejects surplus inputs as readily as
/// missing ones.
fn shape_example(
    mut example: TrainExample,
    head: &HeadConfig,
    table: Option<&FrequencyTable>,
) -> Result<TrainExample> {
    if !head.dual_encoder {
        example.original = None;
    }
    if let Some(table) = table {
        example = example.with_features(table)?;
    }
    Ok(example)
}

/// Fold assignment over the examples' group ids.
fn make_folds_for(
    examples: &[TrainExample],
    k: usize,
    seed: u64,
) -> Result<corpus::FoldAssignment> {
    let group_ids: Vec<String> = examples.iter().map(|ex| ex.group_id.clone()).collect();
    corpus::make_folds(&group_ids, k, seed)
}

/// Pooled cross-validation with per-fold model training: each fold builds
/// a fresh model from the fold seed and trains it on the fold's training
/// split with the configured optimizer settings.
fn cross_validate_model(
    cfg: &RunConfig,
    head: &HeadConfig,
    encoder: &StubEncoder,
    examples: &[TrainExample],
    folds: &corpus::FoldAssignment,
    jobs: usize,
) -> Result<eval::PooledPairs> {
    let spec = cfg.encoder.spec();
    let train_cfg = cfg.train_config();
    eval::cross_validate(
        examples,
        folds,
        cfg.seed,
        jobs,
        |train_split, fold_seed| {
            let mut model = build_model(head.clone(), spec.clone(), fold_seed)?;
            let fold_train = TrainConfig {
                seed: fold_seed,
                ..train_cfg
            };
            qemodel::train(&mut model, train_split, encoder, &fold_train)?;
            Ok(model)
        },
        |model, example| {
            model.forward(
                encoder,
                example.original.as_deref(),
                &example.output,
                example.features_orig.as_ref(),
                example.features_out.as_ref(),
            )
        },
    )
}

/// The output-side feature vector, which every baseline consumes.
fn output_features(example: &TrainExample) -> Result<&FeatureVector> {
    example
        .features_out
        .as_ref()
        .ok_or_else(|| Error::validation("example is missing output features"))
}

/// The gold score for one quality.
fn label_of(example: &TrainExample, quality: &str) -> Result<f64> {
    example.labels.get(quality).copied().ok_or_else(|| {
        Error::validation(format!(
            "example in group {:?} has no {quality:?} label",
            example.group_id
        ))
    })
}

/// A prediction that gives every quality the same value.
fn constant_prediction(qualities: &[&str], value: f64) -> Prediction {
    Prediction {
        values: qualities.iter().map(|&q| (q.to_owned(), value)).collect(),
    }
}

/// Correlates pooled (prediction, gold) pairs per quality into one report
/// row.
fn insert_pooled(
    report: &mut CorrelationReport,
    model: &str,
    pooled: &eval::PooledPairs,
) -> Result<()> {
    for (quality, pairs) in pooled {
        let (predictions, gold): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        report.insert(model, quality.clone(), eval::triple(&predictions, &gold)?);
    }
    Ok(())
}

/// Builds the stub encoder a checkpoint was trained with, from the
/// encoder spec and seed stored in the archive.
fn checkpoint_encoder(model: &qemodel::QEModel) -> Result<StubEncoder> {
    if model.encoder_spec().name != "stub" {
        return Err(Error::validation(format!(
            "checkpoint was trained with encoder {:?}; only \"stub\" is bundled",
            model.encoder_spec().name
        )));
    }
    StubEncoder::with_spec(model.encoder_spec().clone(), model.seed())
}

/// Report row label: encoder family plus head mode, e.g. `simple-qe-m3`.
fn model_label(head: &HeadConfig) -> String {
    let family = if head.dual_encoder {
        "simple-qe"
    } else {
        "sum-qe"
    };
    let mode = match head.mode {
        HeadMode::S1 => "s1",
        HeadMode::M1 => "m1",
        HeadMode::M3 => "m3",
    };
    format!("{family}-{mode}")
}

/// Writes the text and JSON forms of a report, named `{stem}.txt` and
/// `{stem}.json`.
fn write_report(out: &Path, stem: &str, report: &CorrelationReport) -> Result<Vec<String>> {
    let text = report.render(ReportLayout::ThreeStat)?;
    let json = to_pretty_json(&report.to_json())?;
    Ok(vec![
        write_text(out, &format!("{stem}.txt"), &text)?,
        write_text(out, &format!("{stem}.json"), &json)?,
    ])
}

/// Serializes one JSON object per line, with a trailing newline.
fn write_jsonl<T: Serialize>(out: &Path, name: &str, items: &[T]) -> Result<String> {
    let mut body = String::new();
    for item in items {
        body.push_str(&to_json_line(item)?);
        body.push('\n');
    }
    write_text(out, name, &body)
}

fn to_json_line<T: Serialize>(item: &T) -> Result<String> {
    serde_json::to_string(item).map_err(|e| Error::validation(format!("serialization: {e}")))
}

fn to_pretty_json<T: Serialize>(item: &T) -> Result<String> {
    let mut body = serde_json::to_string_pretty(item)
        .map_err(|e| Error::validation(format!("serialization: {e}")))?;
    body.push('\n');
    Ok(body)
}

/// Writes one artifact file and returns its name.
fn write_text(out: &Path, name: &str, content: &str) -> Result<String> {
    let path = out.join(name);
    fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
    Ok(name.to_owned())
}
