//! The JSON report emitted by `analyze`. Every rational is serialized as a
//! string `"p/q"` with an explicit denominator, so the report survives any
//! number of round trips without a floating-point value anywhere. Reports
//! are deterministic modulo the `timing_ms` field, which golden comparison
//! strips.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::job::JobSpec;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub job: JobSpec,
    pub degeneration: DegenerationSection,
    pub hilbert: HilbertSection,
    pub weight: WeightSection,
    pub stability: StabilitySection,
    pub verification: VerificationSection,
    pub timing_ms: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct DegenerationSection {
    /// Reduced Groebner basis under the weight-refined order.
    pub groebner_basis: Vec<String>,
    /// The w-initial forms of the basis elements.
    pub initial_forms: Vec<String>,
    /// Minimal generators of the lead-monomial ideal of the central fiber.
    pub lead_ideal: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct HilbertSection {
    /// `[m, HF(m)]` pairs for `m = 0..=m_max`.
    pub values: Vec<(u32, u64)>,
    /// Hilbert polynomial coefficients `c0..cn`, ascending, as `"p/q"`.
    pub poly_coeffs: Vec<String>,
    pub onset_m0: u32,
    pub dim_n: usize,
    pub degree_d: u64,
    pub mu: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct WeightSection {
    /// `[m, w(Hilb_m)]` pairs for `m = 0..=m_max`.
    pub values: Vec<(u32, i64)>,
    /// Weight polynomial coefficients `a0..a_{n+1}`, ascending, as `"p/q"`.
    pub a_coeffs: Vec<String>,
    pub onset_m0: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct StabilitySection {
    pub a_top: String,
    pub a_sub: String,
    pub f1: String,
    pub w_cm: String,
    /// `[m, A(m)]` pairs of the lift table.
    pub lift_table: Vec<(u32, String)>,
    pub lift_constant: String,
    pub chow_top: String,
    /// `2d + μ/(n+1) − (n+2)`: the coefficient of the Chow-form correction
    /// relating the CM weight to generalized Chow weights; recorded for
    /// reference, never consumed by the pipeline.
    pub chow_correction_coeff: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerificationSection {
    pub m_independence: MIndependenceSection,
    pub route_agreement: RouteAgreementSection,
    pub cross_check: CrossCheckSection,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MIndependenceSection {
    pub pass: bool,
    pub m_from: u32,
    pub m_to: u32,
    /// The common value of `A(m)`, equal to `(n+1)!(2aₙ − μa_{n+1})`.
    pub constant: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RouteAgreementSection {
    pub pass: bool,
    /// `(n!/2d)(2aₙ − μa_{n+1})` from the fitted weight coefficients.
    pub f1_direct: String,
    /// Coefficient of `1/m` in `w(Hilb_m)/(m·P(m))`.
    pub f1_expansion: String,
    /// `w_CM / (2d(n+1))`.
    pub f1_from_cm: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckSection {
    pub enabled: bool,
    pub pass: bool,
    /// Largest degree both Hilbert paths were compared at (0 when disabled).
    pub max_m: u32,
}

impl Report {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Report as a JSON value with the timing field removed — the shape that
/// golden comparison and the replay-determinism guarantee apply to.
pub fn value_without_timing(value: &Value) -> Value {
    let mut v = value.clone();
    if let Some(map) = v.as_object_mut() {
        map.remove("timing_ms");
    }
    v
}

/// Path of the first difference between two JSON values, if any.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    fn walk(a: &Value, b: &Value, path: String) -> Option<String> {
        match (a, b) {
            (Value::Object(ma), Value::Object(mb)) => {
                let keys: std::collections::BTreeSet<&String> =
                    ma.keys().chain(mb.keys()).collect();
                for k in keys {
                    match (ma.get(k), mb.get(k)) {
                        (Some(va), Some(vb)) => {
                            if let Some(p) = walk(va, vb, format!("{path}.{k}")) {
                                return Some(p);
                            }
                        }
                        _ => return Some(format!("{path}.{k}")),
                    }
                }
                None
            }
            (Value::Array(xa), Value::Array(xb)) => {
                if xa.len() != xb.len() {
                    return Some(format!("{path}.length"));
                }
                for (i, (va, vb)) in xa.iter().zip(xb).enumerate() {
                    if let Some(p) = walk(va, vb, format!("{path}[{i}]")) {
                        return Some(p);
                    }
                }
                None
            }
            _ => {
                if a == b {
                    None
                } else {
                    Some(path)
                }
            }
        }
    }
    walk(a, b, "$".to_string())
}
