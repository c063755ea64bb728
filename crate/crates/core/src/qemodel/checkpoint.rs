//! Model checkpoints: a small self-describing binary format.
//!
//! Layout: an 8-byte magic (`QEMODEL1`), a little-endian `u32` header
//! length, a JSON header carrying the head config, encoder spec, seed, and
//! parameter count, then the flat parameter vector as little-endian `f64`
//! values in [`QEModel::flat_params`] order. Everything is written exactly,
//! so a round trip restores the model bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build_model, HeadConfig, QEModel};
use crate::encoders::EncoderSpec;
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"QEMODEL1";

#[derive(Serialize, Deserialize)]
struct Header {
    config: HeadConfig,
    encoder: EncoderSpec,
    seed: u64,
    param_count: usize,
}

/// Writes the model to `path`.
pub fn save_checkpoint(model: &QEModel, path: &Path) -> Result<()> {
    let header = Header {
        config: model.config().clone(),
        encoder: model.encoder_spec().clone(),
        seed: model.seed(),
        param_count: model.param_count(),
    };
    let header_json = serde_json::to_vec(&header).map_err(|e| Error::validation(e.to_string()))?;

    let params = model.flat_params();
    let mut bytes = Vec::with_capacity(MAGIC.len() + 4 + header_json.len() + params.len() * 8);
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&(header_json.len() as u32).to_le_bytes());
    bytes.extend_from_slice(&header_json);
    for value in params {
        bytes.extend_from_slice(&value.to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Reads a model back; validates magic, header, and parameter count.
pub fn load_checkpoint(path: &Path) -> Result<QEModel> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let with_context = |message: &str| Error::validation(format!("{}: {message}", path.display()));

    if bytes.len() < MAGIC.len() + 4 {
        return Err(with_context("file too short to be a model checkpoint"));
    }
    if &bytes[..MAGIC.len()] != MAGIC {
        return Err(with_context("not a model checkpoint (bad magic)"));
    }
    let header_len =
        u32::from_le_bytes(bytes[MAGIC.len()..MAGIC.len() + 4].try_into().unwrap()) as usize;
    let header_start = MAGIC.len() + 4;
    let payload_start = header_start + header_len;
    if bytes.len() < payload_start {
        return Err(with_context("truncated checkpoint header"));
    }
    let header: Header = serde_json::from_slice(&bytes[header_start..payload_start])
        .map_err(|e| with_context(&format!("invalid checkpoint header: {e}")))?;

    let payload = &bytes[payload_start..];
    if payload.len() != header.param_count * 8 {
        return Err(with_context(&format!(
            "expected {} parameter bytes, found {}",
            header.param_count * 8,
            payload.len()
        )));
    }
    let params: Vec<f64> = payload
        .chunks_exact(8)
        .map(|chunk| f64::from_le_bytes(chunk.try_into().unwrap()))
        .collect();

    let mut model = build_model(header.config, header.encoder, header.seed)?;
    if model.param_count() != header.param_count {
        return Err(with_context(
            "parameter count disagrees with the model configuration",
        ));
    }
    model.set_flat_params(&params)?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qemodel::HeadMode;

    fn sample_model() -> QEModel {
        build_model(
            HeadConfig {
                mode: HeadMode::M3,
                qualities: vec![
                    "fluency".to_owned(),
                    "adequacy".to_owned(),
                    "complexity".to_owned(),
                ],
                dual_encoder: true,
                use_features: true,
                feature_proj_dim: 16,
            },
            EncoderSpec::stub(),
            1234,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.ckpt");
        let mut model = sample_model();
        // Make the parameters less uniform than a fresh init.
        let mut params = model.flat_params();
        for (i, p) in params.iter_mut().enumerate() {
            *p += (i % 7) as f64 * 0.125;
        }
        model.set_flat_params(&params).unwrap();

        save_checkpoint(&model, &path).unwrap();
        let restored = load_checkpoint(&path).unwrap();
        assert_eq!(restored, model);
        assert_eq!(
            restored.flat_params(),
            model.flat_params(),
            "parameters must survive exactly"
        );
    }

    #[test]
    fn corrupted_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.ckpt");
        let model = sample_model();
        save_checkpoint(&model, &path).unwrap();
        let good = std::fs::read(&path).unwrap();

        // Bad magic.
        let mut bad = good.clone();
        bad[0] = b'X';
        std::fs::write(&path, &bad).unwrap();
        assert!(load_checkpoint(&path).is_err());

        // Truncated payload.
        std::fs::write(&path, &good[..good.len() - 3]).unwrap();
        assert!(load_checkpoint(&path).is_err());

        // Empty file.
        std::fs::write(&path, b"").unwrap();
        assert!(load_checkpoint(&path).is_err());

        // Missing file.
        assert!(load_checkpoint(&dir.path().join("absent.ckpt")).is_err());
    }
}
