//! Golden corpus: `corpus/<name>/{manifold.json, jobs.json, expected.json}`.
//!
//! Each entry's jobs run against its manifold, and the canonical JSON of all
//! outcomes is compared byte for byte with `expected.json`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;
use wgenus_core::cohomology::file::load_model;

use crate::job::{execute, JobSpec};
use crate::report::canonical;

pub const MANIFOLD_FILE: &str = "manifold.json";
pub const JOBS_FILE: &str = "jobs.json";
pub const EXPECTED_FILE: &str = "expected.json";

/// Problems with the corpus as a whole; these map to exit status 2.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus directory {0} does not exist")]
    Missing(PathBuf),
    #[error("corpus directory {0} has no entries")]
    Empty(PathBuf),
    #[error("cannot read corpus directory {0}: {1}")]
    Io(PathBuf, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    Blessed,
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryResult {
    pub name: String,
    pub status: EntryStatus,
    /// The freshly computed canonical JSON, when the entry could be evaluated.
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
}

impl CorpusReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e.status, EntryStatus::Fail(_)))
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// Computed outputs by entry name.
    pub fn outputs(&self) -> BTreeMap<&str, &str> {
        self.entries.iter().filter_map(|e| Some((e.name.as_str(), e.output.as_deref()?))).collect()
    }

    pub fn table(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0).max(5);
        let mut s = format!("{:<width$}  result\n", "entry");
        for e in &self.entries {
            let status = match &e.status {
                EntryStatus::Pass => "pass".to_string(),
                EntryStatus::Blessed => "blessed".to_string(),
                EntryStatus::Fail(why) => format!("FAIL: {why}"),
            };
            let _ = writeln!(s, "{:<width$}  {status}", e.name);
        }
        let failed = self.entries.iter().filter(|e| matches!(e.status, EntryStatus::Fail(_))).count();
        let _ = writeln!(s, "{} entries, {} failed", self.entries.len(), failed);
        s
    }
}

/// Canonical JSON of every job in one entry directory.
pub fn render_entry(dir: &Path) -> Result<String, String> {
    let model = load_model(&dir.join(MANIFOLD_FILE)).map_err(|e| format!("{MANIFOLD_FILE}: {e}"))?;
    let jobs_text = fs::read_to_string(dir.join(JOBS_FILE)).map_err(|e| format!("{JOBS_FILE}: {e}"))?;
    let jobs: Vec<JobSpec> = serde_json::from_str(&jobs_text).map_err(|e| format!("{JOBS_FILE}: {e}"))?;
    let results: Vec<Value> = jobs
        .iter()
        .map(|job| {
            let out = execute(job, &model);
            json!({
                "job": serde_json::to_value(job).expect("jobs serialize"),
                "exit_code": out.code,
                "output": out.json,
            })
        })
        .collect();
    Ok(canonical(&json!({ "manifold": model.name(), "results": results })))
}

fn verify_entry(name: String, dir: &Path, bless: bool) -> EntryResult {
    let output = match render_entry(dir) {
        Ok(o) => o,
        Err(why) => return EntryResult { name, status: EntryStatus::Fail(why), output: None },
    };
    let expected_path = dir.join(EXPECTED_FILE);
    let status = if bless {
        match fs::write(&expected_path, &output) {
            Ok(()) => EntryStatus::Blessed,
            Err(e) => EntryStatus::Fail(format!("{EXPECTED_FILE}: {e}")),
        }
    } else {
        match fs::read(&expected_path) {
            Ok(bytes) if bytes == output.as_bytes() => EntryStatus::Pass,
            Ok(_) => EntryStatus::Fail(format!("{EXPECTED_FILE} differs from computed output")),
            Err(e) => EntryStatus::Fail(format!("{EXPECTED_FILE}: {e}")),
        }
    };
    EntryResult { name, status, output: Some(output) }
}

/// Recomputes every entry of the corpus at `root`, in parallel, reporting in
/// name order. With `bless` the expected files are rewritten instead.
pub fn corpus_verify(root: &Path, bless: bool) -> Result<CorpusReport, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::Missing(root.to_path_buf()));
    }
    let io = |e: std::io::Error| CorpusError::Io(root.to_path_buf(), e.to_string());
    let mut dirs: Vec<(String, PathBuf)> = Vec::new();
    for entry in fs::read_dir(root).map_err(io)? {
        let entry = entry.map_err(io)?;
        if entry.file_type().map_err(io)?.is_dir() {
            dirs.push((entry.file_name().to_string_lossy().into_owned(), entry.path()));
        }
    }
    if dirs.is_empty() {
        return Err(CorpusError::Empty(root.to_path_buf()));
    }
    dirs.sort();
    let entries = dirs.into_par_iter().map(|(name, dir)| verify_entry(name, &dir, bless)).collect();
    Ok(CorpusReport { entries })
}
