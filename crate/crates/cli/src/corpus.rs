//! Batch runner: execute every `*.job.json` in a directory and compare the
//! reports against adjacent `*.golden.json` files, field for field, with
//! the timing stripped.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::job::JobSpec;
use crate::pipeline::{analyze, PipelineError};
use crate::report::{first_difference, value_without_timing};
use crate::{EXIT_INPUT, EXIT_INVARIANT, EXIT_NEW_GOLDENS, EXIT_OK};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobStatus {
    Pass,
    /// Golden exists but differs; carries the first differing JSON path.
    Fail(String),
    /// No golden report next to the job yet.
    New,
    /// The job could not be run at all.
    Error { invariant: bool, message: String },
}

impl fmt::Display for JobStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobStatus::Pass => write!(f, "pass"),
            JobStatus::Fail(path) => write!(f, "FAIL (first difference at {path})"),
            JobStatus::New => write!(f, "new (no golden report)"),
            JobStatus::Error { message, .. } => write!(f, "ERROR: {message}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub rows: Vec<(String, JobStatus)>,
}

impl CorpusSummary {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut new = 0;
        let mut error = 0;
        for (_, status) in &self.rows {
            match status {
                JobStatus::Pass => pass += 1,
                JobStatus::Fail(_) => fail += 1,
                JobStatus::New => new += 1,
                JobStatus::Error { .. } => error += 1,
            }
        }
        (pass, fail, new, error)
    }

    pub fn exit_code(&self) -> i32 {
        if self
            .rows
            .iter()
            .any(|(_, s)| matches!(s, JobStatus::Error { invariant: true, .. }))
        {
            return EXIT_INVARIANT;
        }
        let (_, fail, new, error) = self.counts();
        if fail > 0 || error > 0 {
            EXIT_INPUT
        } else if new > 0 {
            EXIT_NEW_GOLDENS
        } else {
            EXIT_OK
        }
    }
}

/// Run every job (filename-sorted) and compare against its golden report.
pub fn run_corpus(dir: &Path) -> Result<CorpusSummary, PipelineError> {
    let mut jobs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| PipelineError::Input(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.ends_with(".job.json"))
        })
        .collect();
    jobs.sort();

    let mut rows = Vec::new();
    for job_path in jobs {
        let name = job_path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or("?")
            .trim_end_matches(".job.json")
            .to_string();
        rows.push((name, run_one(&job_path)));
    }
    Ok(CorpusSummary { rows })
}

fn run_one(job_path: &Path) -> JobStatus {
    let job = match JobSpec::load(job_path) {
        Ok(job) => job,
        Err(e) => {
            return JobStatus::Error { invariant: false, message: e.to_string() }
        }
    };
    let report = match analyze(&job) {
        Ok(report) => report,
        Err(e) => {
            return JobStatus::Error {
                invariant: matches!(e, PipelineError::Invariant(_)),
                message: e.to_string(),
            }
        }
    };

    let golden_path = golden_path_for(job_path);
    let golden_text = match std::fs::read_to_string(&golden_path) {
        Ok(text) => text,
        Err(_) => return JobStatus::New,
    };
    let golden: Value = match serde_json::from_str(&golden_text) {
        Ok(v) => v,
        Err(e) => {
            return JobStatus::Error {
                invariant: false,
                message: format!("malformed golden {}: {e}", golden_path.display()),
            }
        }
    };

    let got = serde_json::to_value(&report).expect("report serializes");
    let got = value_without_timing(&got);
    let want = value_without_timing(&golden);
    match first_difference(&want, &got) {
        None => JobStatus::Pass,
        Some(path) => JobStatus::Fail(path),
    }
}

pub fn golden_path_for(job_path: &Path) -> PathBuf {
    let name = job_path
        .file_name()
        .and_then(|n| n.to_str())
        .expect("job filename");
    job_path.with_file_name(format!(
        "{}.golden.json",
        name.trim_end_matches(".job.json")
    ))
}
