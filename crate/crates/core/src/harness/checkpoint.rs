use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;

/// Resumable state of a circulant search. Written only between records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub format_version: u32,
    pub family: String,
    pub n_min: usize,
    pub n_max: usize,
    pub dedup: bool,
    pub sample_per_n: Option<usize>,
    pub rng_seed: u64,
    /// Index of the next candidate in enumeration order.
    pub cursor: usize,
    pub records_written: usize,
    pub skipped_disconnected: usize,
    pub skipped_symmetric: usize,
    pub counterexamples: usize,
    pub violations: usize,
    pub unverifiable: usize,
}

impl SearchCheckpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::MalformedInput(format!("cannot read checkpoint {}: {e}", path.display())))?;
        let cp: SearchCheckpoint = serde_json::from_str(&text)
            .map_err(|e| Error::MalformedInput(format!("bad checkpoint {}: {e}", path.display())))?;
        if cp.format_version != CHECKPOINT_FORMAT_VERSION {
            return Err(Error::MalformedInput(format!(
                "checkpoint format version {} is not supported (expected {CHECKPOINT_FORMAT_VERSION})",
                cp.format_version
            )));
        }
        Ok(cp)
    }

    /// Writes to a sibling temporary file and renames it over `path`, so a
    /// failed write leaves the previous checkpoint in place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        fs::write(&tmp, text + "\n")
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::NumericFailure(format!("checkpoint write to {} failed: {e}", path.display())))
    }
}
