//! Job files: the JSON description of one degeneration to analyze.

use serde::{Deserialize, Serialize};
use std::path::Path;

use cmweight::algebra::{parse_polynomial, Ideal, Polynomial};
use cmweight::groebner::OneParamSubgroup;

use crate::pipeline::PipelineError;

/// One analysis job.
///
/// ```json
/// {
///   "num_vars": 3,
///   "generators": ["x0*x2 - x1^2"],
///   "lambda_weights": [2, -1, -1],
///   "m_max": null,
///   "options": { "fast_path": true, "cross_check": true }
/// }
/// ```
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// Number of coordinates `N+1` of the ambient projective space.
    pub num_vars: usize,
    /// Generator expressions in the variables `x0..x{N}`.
    pub generators: Vec<String>,
    /// Diagonal weights of the one-parameter subgroup; length `num_vars`.
    pub lambda_weights: Vec<i64>,
    /// Sampling bound override; auto-sized from the lead ideal when absent.
    #[serde(default)]
    pub m_max: Option<u32>,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    /// Use the pivot-recursion Hilbert function (default); the enumeration
    /// path is used when false.
    #[serde(default = "default_true")]
    pub fast_path: bool,
    /// Recompute every Hilbert value along both paths and fail hard (exit 2)
    /// on any disagreement.
    #[serde(default)]
    pub cross_check: bool,
}

fn default_true() -> bool {
    true
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions { fast_path: true, cross_check: false }
    }
}

impl JobSpec {
    pub fn load(path: &Path) -> Result<JobSpec, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            PipelineError::Input(format!("cannot read job file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            PipelineError::Input(format!("malformed job file {}: {e}", path.display()))
        })
    }

    /// Parse and validate into an ideal and a subgroup.
    pub fn build(&self) -> Result<(Ideal, OneParamSubgroup), PipelineError> {
        if self.num_vars == 0 {
            return Err(PipelineError::Input("num_vars must be at least 1".into()));
        }
        if self.lambda_weights.len() != self.num_vars {
            return Err(PipelineError::Input(format!(
                "lambda_weights has {} entries but num_vars is {}",
                self.lambda_weights.len(),
                self.num_vars
            )));
        }
        let mut generators: Vec<Polynomial> = Vec::with_capacity(self.generators.len());
        for (index, text) in self.generators.iter().enumerate() {
            let poly = parse_polynomial(text, self.num_vars).map_err(|e| {
                PipelineError::Input(format!("generator {index}: {e}"))
            })?;
            generators.push(poly);
        }
        let ideal = Ideal::new(self.num_vars, generators)
            .map_err(|e| PipelineError::Input(e.to_string()))?;
        Ok((ideal, OneParamSubgroup::new(self.lambda_weights.clone())))
    }
}
