//! Run configuration.
//!
//! Every parameter of a run lives in one TOML file; the command line only
//! picks the file, the subcommand, and where artifacts go. The raw config
//! bytes are hashed so artifacts can be traced back to the exact settings
//! that produced them, and two runs of the same config file are
//! byte-identical under the bundled stub encoder.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use simpeval_core::encoders::{EncoderSpec, StubEncoder};
use simpeval_core::qemodel::{HeadConfig, HeadMode, TrainConfig};
use simpeval_core::{Error, Result};

/// Complete description of one run, parsed from a TOML file.
///
/// ```toml
/// seed = 7
///
/// [paths]
/// judgments = "data/judgments.jsonl"
/// frequencies = "data/frequencies.tsv"
///
/// [encoder]
/// name = "stub"
/// dimension = 64
/// max_units = 512
///
/// [head]
/// mode = "m3"
/// dual_encoder = true
/// use_features = true
/// d_f = 32
///
/// [train]
/// epochs = 20
/// batch_size = 32
/// lr = 0.001
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Run seed: seeds the stub encoder and fold assignment, and is the
    /// default training seed.
    pub seed: u64,
    /// Fold parallelism for cross-validation; overridable by `--jobs`
    /// (placement and speed only — results do not depend on it).
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    /// Output directory; overridable by `--out`.
    #[serde(default = "default_out")]
    pub out: PathBuf,
    /// Input files; each subcommand checks for the ones it needs.
    #[serde(default)]
    pub paths: PathSection,
    /// Encoder backend and shape.
    #[serde(default)]
    pub encoder: EncoderSection,
    /// Regression head layout.
    #[serde(default)]
    pub head: HeadSection,
    /// Optimizer settings.
    #[serde(default)]
    pub train: TrainSection,
    /// Evaluation protocol settings.
    #[serde(default)]
    pub eval: EvalSection,
}

fn default_jobs() -> usize {
    1
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    /// Reads and parses a config file, returning it together with the
    /// SHA-256 hex digest of the raw file bytes.
    pub fn load(path: &Path) -> Result<(Self, String)> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|e| Error::validation(format!("{}: not UTF-8: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| Error::validation(format!("{}: {e}", path.display())))?;
        config.validate()?;

        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Ok((config, digest))
    }

    fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(Error::validation("jobs must be at least 1"));
        }
        self.encoder.spec().validate()?;
        self.head.head_config().validate()?;
        Ok(())
    }

    /// The training settings with the run seed filled in as the default.
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            epochs: self.train.epochs,
            batch_size: self.train.batch_size,
            lr: self.train.lr,
            seed: self.train.seed.unwrap_or(self.seed),
        }
    }
}

/// Input files. All optional here; each subcommand demands its own subset
/// via [`PathSection::require`], which also checks the file exists.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSection {
    /// Plain text, one sentence per line.
    pub sentences: Option<PathBuf>,
    /// Bracketed constituency parses, one per line, aligned with
    /// `sentences`; blank lines mean "no parse for this sentence".
    pub parses: Option<PathBuf>,
    /// Unigram frequency table, `word<TAB>count` per line.
    pub frequencies: Option<PathBuf>,
    /// Human judgments, one JSON record per line.
    pub judgments: Option<PathBuf>,
    /// `{source, output, references}` tuples, one JSON object per line.
    pub metrics: Option<PathBuf>,
    /// Directory of leveled rewrites, one `article.level.txt` per file.
    pub leveled_dir: Option<PathBuf>,
    /// Simple-side Wikipedia articles, one JSON record per line.
    pub wiki_simple: Option<PathBuf>,
    /// Standard-side Wikipedia articles, one JSON record per line.
    pub wiki_standard: Option<PathBuf>,
    /// A previously trained model archive.
    pub checkpoint: Option<PathBuf>,
}

impl PathSection {
    /// Returns the configured path for `key`, or a validation error naming
    /// the missing key. The path must exist on disk.
    pub fn require(&self, key: &str) -> Result<&Path> {
        let slot = match key {
            "sentences" => &self.sentences,
            "parses" => &self.parses,
            "frequencies" => &self.frequencies,
            "judgments" => &self.judgments,
            "metrics" => &self.metrics,
            "leveled_dir" => &self.leveled_dir,
            "wiki_simple" => &self.wiki_simple,
            "wiki_standard" => &self.wiki_standard,
            "checkpoint" => &self.checkpoint,
            other => {
                return Err(Error::validation(format!("unknown path key {other:?}")));
            }
        };
        let path = slot
            .as_deref()
            .ok_or_else(|| Error::validation(format!("config is missing [paths] {key}")))?;
        if !path.exists() {
            return Err(Error::validation(format!(
                "[paths] {key} = {:?} does not exist",
                path.display().to_string()
            )));
        }
        Ok(path)
    }
}

/// The `[encoder]` block: backend name, shape, and (for remote backends)
/// an endpoint URL. Only the bundled stub is runnable in this binary.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncoderSection {
    /// Backend name; `"stub"` is the only one bundled.
    pub name: String,
    /// Embedding dimension.
    pub dimension: usize,
    /// Sub-word budget per encode call.
    pub max_units: usize,
    /// Remote service URL, accepted for forward compatibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
}

impl Default for EncoderSection {
    fn default() -> Self {
        let spec = EncoderSpec::stub();
        EncoderSection {
            name: spec.name,
            dimension: spec.dimension,
            max_units: spec.max_units,
            endpoint: None,
        }
    }
}

impl EncoderSection {
    /// The shape this block describes.
    pub fn spec(&self) -> EncoderSpec {
        EncoderSpec {
            name: self.name.clone(),
            dimension: self.dimension,
            max_units: self.max_units,
        }
    }

    /// Instantiates the backend, seeded for determinism.
    ///
    /// Only `name = "stub"` can be built here; any other name is a config
    /// error (remote backends need a separate adapter process).
    pub fn build(&self, seed: u64) -> Result<StubEncoder> {
        if self.name != "stub" {
            return Err(Error::validation(format!(
                "encoder {:?} is not bundled with this binary; only \"stub\" is",
                self.name
            )));
        }
        StubEncoder::with_spec(self.spec(), seed)
    }
}

/// The `[head]` block mirroring the regression-head configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeadSection {
    /// `"s1"`, `"m1"`, or `"m3"`.
    pub mode: HeadMode,
    /// Predicted qualities in output order. Single-task heads need exactly
    /// one entry.
    #[serde(default = "default_qualities")]
    pub qualities: Vec<String>,
    /// Encode the original sentence alongside the output.
    #[serde(default)]
    pub dual_encoder: bool,
    /// Project the five linguistic features into the input.
    #[serde(default)]
    pub use_features: bool,
    /// Feature projector output dimension.
    #[serde(default = "default_d_f")]
    pub d_f: usize,
}

fn default_qualities() -> Vec<String> {
    vec![
        "fluency".to_owned(),
        "adequacy".to_owned(),
        "complexity".to_owned(),
    ]
}

fn default_d_f() -> usize {
    32
}

impl Default for HeadSection {
    fn default() -> Self {
        HeadSection {
            mode: HeadMode::M3,
            qualities: default_qualities(),
            dual_encoder: true,
            use_features: false,
            d_f: default_d_f(),
        }
    }
}

impl HeadSection {
    /// The model-facing head configuration.
    pub fn head_config(&self) -> HeadConfig {
        HeadConfig {
            mode: self.mode,
            qualities: self.qualities.clone(),
            dual_encoder: self.dual_encoder,
            use_features: self.use_features,
            feature_proj_dim: self.d_f,
        }
    }
}

/// The `[train]` block. `seed` defaults to the run seed when omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSection {
    /// Passes over the data.
    pub epochs: usize,
    /// Examples per SGD step.
    pub batch_size: usize,
    /// Learning rate.
    pub lr: f64,
    /// Shuffle seed; the run seed when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for TrainSection {
    fn default() -> Self {
        TrainSection {
            epochs: 10,
            batch_size: 32,
            lr: 1e-3,
            seed: None,
        }
    }
}

/// What `evaluate` measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    /// Pooled cross-validation of the quality-estimation model on human
    /// judgments.
    Qe,
    /// Pooled cross-validation of a complexity predictor on a leveled
    /// corpus.
    Complexity,
    /// Apply a fixed checkpoint to out-of-domain simple/standard article
    /// pairs.
    Transfer,
}

/// Text unit for complexity evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalGranularity {
    /// Score individual sentences.
    Sentence,
    /// Score whole documents.
    Document,
}

/// The `[eval]` block.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSection {
    /// Which protocol to run.
    #[serde(default = "default_mode")]
    pub mode: EvalMode,
    /// Fold count for cross-validation.
    #[serde(default = "default_folds")]
    pub folds: usize,
    /// Unit for complexity mode.
    #[serde(default = "default_granularity")]
    pub granularity: EvalGranularity,
}

fn default_mode() -> EvalMode {
    EvalMode::Qe
}

fn default_folds() -> usize {
    10
}

fn default_granularity() -> EvalGranularity {
    EvalGranularity::Sentence
}

impl Default for EvalSection {
    fn default() -> Self {
        EvalSection {
            mode: default_mode(),
            folds: default_folds(),
            granularity: default_granularity(),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::io::Write as _;

    use super::*;

    fn write_config(dir: &Path, text: &str) -> PathBuf {
        let path = dir.join("run.toml");
        let mut file = fs::File::create(&path).unwrap();
        file.write_all(text.as_bytes()).unwrap();
        path
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(dir.path(), "seed = 7\n");
        let (config, hash) = RunConfig::load(&path).unwrap();

        assert_eq!(config.seed, 7);
        assert_eq!(config.jobs, 1);
        assert_eq!(config.encoder.spec(), EncoderSpec::stub());
        assert_eq!(config.eval.folds, 10);
        assert_eq!(config.train_config().seed, 7);
        assert_eq!(hash.len(), 64);
    }

    #[test]
    fn train_seed_overrides_run_seed() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(
            dir.path(),
            "seed = 7\n[train]\nepochs = 1\nbatch_size = 8\nlr = 0.01\nseed = 99\n",
        );
        let (config, _) = RunConfig::load(&path).unwrap();
        assert_eq!(config.train_config().seed, 99);
    }

    #[test]
    fn equal_bytes_hash_equal_and_differing_bytes_do_not() {
        let dir = tempfile::tempdir().unwrap();
        let a = write_config(dir.path(), "seed = 7\n");
        let (_, hash_a) = RunConfig::load(&a).unwrap();
        let (_, hash_again) = RunConfig::load(&a).unwrap();
        assert_eq!(hash_a, hash_again);

        let b_path = dir.path().join("other.toml");
        fs::write(&b_path, "seed = 8\n").unwrap();
        let (_, hash_b) = RunConfig::load(&b_path).unwrap();
        assert_ne!(hash_a, hash_b);
    }

    #[test]
    fn bad_toml_and_unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write_config(dir.path(), "seed = [unclosed\n");
        assert!(RunConfig::load(&bad).is_err());

        let unknown = dir.path().join("unknown.toml");
        fs::write(&unknown, "seed = 1\ntypo_key = true\n").unwrap();
        let err = RunConfig::load(&unknown).unwrap_err();
        assert!(err.to_string().contains("typo_key"), "{err}");
    }

    #[test]
    fn invalid_head_is_rejected_at_load_time() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(
            dir.path(),
            "seed = 1\n[head]\nmode = \"s1\"\nqualities = [\"a\", \"b\"]\n",
        );
        let err = RunConfig::load(&path).unwrap_err();
        assert!(err.to_string().contains("one quality per model"), "{err}");
    }

    #[test]
    fn missing_and_nonexistent_paths_are_named() {
        let section = PathSection::default();
        let err = section.require("judgments").unwrap_err();
        assert!(err.to_string().contains("judgments"), "{err}");

        let section = PathSection {
            judgments: Some(PathBuf::from("/no/such/file.jsonl")),
            ..PathSection::default()
        };
        let err = section.require("judgments").unwrap_err();
        assert!(err.to_string().contains("does not exist"), "{err}");
    }

    #[test]
    fn only_the_stub_encoder_can_be_built() {
        let mut section = EncoderSection::default();
        assert!(section.build(0).is_ok());

        section.name = "remote-bert".to_owned();
        section.endpoint = Some("http://localhost:9000".to_owned());
        let err = section.build(0).unwrap_err();
        assert!(err.to_string().contains("remote-bert"), "{err}");
    }
}
