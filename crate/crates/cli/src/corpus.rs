//! The committed fixture corpus.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::CliError;

/// Overrides the corpus location.
pub const CORPUS_ENV: &str = "HITCHIN_CORPUS";

pub fn corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load(relative: &str) -> Result<Value, CliError> {
    read_json(&corpus_dir().join(relative))
}

/// The JSON files of a corpus subdirectory, sorted by name.
pub fn list(subdir: &str) -> Result<Vec<PathBuf>, CliError> {
    let dir = corpus_dir().join(subdir);
    let entries =
        std::fs::read_dir(&dir).map_err(|e| CliError::Parse(format!("cannot list {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}
