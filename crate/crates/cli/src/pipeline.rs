//! The analysis pipeline: parse → Groebner → flat limit → Hilbert profile →
//! weight profile → F₁, CM weight, lift table, verdicts.

use std::time::Instant;

use cmweight::algebra::{format_rational, rat_int, Rational};
use cmweight::groebner::{flat_limit, FlatLimit, MonomialIdeal, OneParamSubgroup};
use cmweight::hilbert::{
    binomial, default_m_max, geometric_invariants, hilbert_function,
    hilbert_function_by_enumeration, hilbert_polynomial, standard_monomials, GeometricInvariants,
    HilbertError, HilbertPath, HilbertProfile,
};
use cmweight::stability::{
    cm_weight, hilbert_weight, stability_report, verify_m_independence, weight_profile,
    StabilityError, WeightProfile,
};

use crate::job::JobSpec;
use crate::report::{
    CrossCheckSection, DegenerationSection, HilbertSection, MIndependenceSection, Report,
    RouteAgreementSection, StabilitySection, VerificationSection, WeightSection,
};

/// Pipeline failures, split by exit class: `Input` is the user's problem
/// (exit 1), `Invariant` is a violated mathematical invariant (exit 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    Input(String),
    Invariant(String),
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PipelineError::Input(msg) => write!(f, "input error: {msg}"),
            PipelineError::Invariant(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for PipelineError {}

fn from_hilbert(e: HilbertError) -> PipelineError {
    match e {
        HilbertError::NoStabilization(_) | HilbertError::EmptyScheme => {
            PipelineError::Input(e.to_string())
        }
        HilbertError::SpotCheckMismatch { .. } | HilbertError::NonGeometricDegree { .. } => {
            PipelineError::Invariant(e.to_string())
        }
    }
}

fn from_stability(e: StabilityError) -> PipelineError {
    match e {
        StabilityError::NoStabilization(_) | StabilityError::RangeBelowOnset { .. } => {
            PipelineError::Input(e.to_string())
        }
        _ => PipelineError::Invariant(e.to_string()),
    }
}

/// Guard for enumeration-based work: the number of degree-`m` monomials
/// must stay within a desk-scale budget.
pub fn guard_enumeration(num_vars: usize, m: u32) -> Result<(), PipelineError> {
    const LIMIT: u64 = 1_000_000;
    let count = binomial(m as u64 + num_vars as u64 - 1, num_vars as u64 - 1);
    if count > LIMIT {
        return Err(PipelineError::Input(format!(
            "guard exceeded: degree {m} has {count} monomials in {num_vars} variables (limit {LIMIT})"
        )));
    }
    Ok(())
}

struct Profiles {
    hp: HilbertProfile,
    inv: GeometricInvariants,
    wp: WeightProfile,
    m_max: u32,
}

/// Fit both profiles over `0..=m_max`, extending the range once if the lift
/// table needs values past it.
fn fit_profiles(
    lead: &MonomialIdeal,
    lambda: &OneParamSubgroup,
    mut m_max: u32,
    path: HilbertPath,
) -> Result<Profiles, PipelineError> {
    for _ in 0..2 {
        guard_enumeration(lead.num_vars(), m_max + 2)?;
        let hp = hilbert_polynomial(lead, m_max, path).map_err(from_hilbert)?;
        let inv = geometric_invariants(&hp).map_err(from_hilbert)?;
        let wp = weight_profile(lead, lambda, m_max).map_err(from_stability)?;

        let onset = hp.onset_m0.max(wp.onset_m0);
        let needed = onset + 6 + inv.dim_n as u32 + 1;
        if needed <= m_max {
            return Ok(Profiles { hp, inv, wp, m_max });
        }
        m_max = needed;
    }
    Err(PipelineError::Input(
        "sampling range too small for the lift table; increase m_max".into(),
    ))
}

fn cross_check_paths(lead: &MonomialIdeal, m_max: u32) -> Result<(), PipelineError> {
    for m in 0..=m_max {
        let fast = hilbert_function(lead, m);
        let slow = hilbert_function_by_enumeration(lead, m);
        if fast != slow {
            return Err(PipelineError::Invariant(format!(
                "Hilbert paths disagree at m = {m}: recursion {fast}, enumeration {slow}"
            )));
        }
    }
    Ok(())
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// Run the full pipeline and assemble the report.
pub fn analyze(job: &JobSpec) -> Result<Report, PipelineError> {
    let start = Instant::now();
    let (ideal, lambda) = job.build()?;
    let fl: FlatLimit =
        flat_limit(&ideal, &lambda).map_err(|e| PipelineError::Input(e.to_string()))?;

    let path = if job.options.fast_path {
        HilbertPath::Fast
    } else {
        HilbertPath::Enumeration
    };
    let m_max0 = job.m_max.unwrap_or_else(|| default_m_max(&fl.lead));
    let profiles = fit_profiles(&fl.lead, &lambda, m_max0, path)?;
    let Profiles { hp, inv, wp, m_max } = profiles;

    // The fitted dimension must agree with the combinatorial dimension of
    // the lead ideal.
    if fl.lead.projective_dimension() != Some(inv.dim_n as i64) {
        return Err(PipelineError::Invariant(format!(
            "Hilbert polynomial has degree {} but the lead ideal has dimension {:?}",
            inv.dim_n,
            fl.lead.projective_dimension()
        )));
    }

    if job.options.cross_check {
        cross_check_paths(&fl.lead, m_max)?;
    }

    let m_from = hp.onset_m0.max(wp.onset_m0);
    let m_to = m_from + 6;
    let stab = stability_report(&hp, &inv, &wp, m_from, m_to).map_err(from_stability)?;

    let n = inv.dim_n;
    let f1_from_cm = &stab.w_cm / (rat_int(2) * rat_int(inv.degree_d as i64) * rat_int(n as i64 + 1));
    if f1_from_cm != stab.f1 {
        return Err(PipelineError::Invariant(format!(
            "CM route disagrees: w_cm/(2d(n+1)) = {}, F1 = {}",
            format_rational(&f1_from_cm),
            format_rational(&stab.f1)
        )));
    }

    // a-coefficients padded to a0..a_{n+1}.
    let a_coeffs: Vec<Rational> = (0..=n + 1).map(|k| wp.coeff(k)).collect();
    // 2d + mu/(n+1) - (n+2), recorded as metadata.
    let chow_correction = rat_int(2 * inv.degree_d as i64) + &inv.mu / rat_int(n as i64 + 1)
        - rat_int(n as i64 + 2);

    let report = Report {
        job: job.clone(),
        degeneration: DegenerationSection {
            groebner_basis: fl.groebner.generators.iter().map(|g| g.to_string()).collect(),
            initial_forms: fl
                .initial_forms
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
            lead_ideal: fl.lead.generators().iter().map(|g| g.to_string()).collect(),
        },
        hilbert: HilbertSection {
            values: hp.values.clone(),
            poly_coeffs: rationals(&hp.poly_coeffs),
            onset_m0: hp.onset_m0,
            dim_n: inv.dim_n,
            degree_d: inv.degree_d,
            mu: format_rational(&inv.mu),
        },
        weight: WeightSection {
            values: wp.values.clone(),
            a_coeffs: rationals(&a_coeffs),
            onset_m0: wp.onset_m0,
        },
        stability: StabilitySection {
            a_top: format_rational(&stab.a_top),
            a_sub: format_rational(&stab.a_sub),
            f1: format_rational(&stab.f1),
            w_cm: format_rational(&stab.w_cm),
            lift_table: stab
                .lift_table
                .iter()
                .map(|(m, a)| (*m, format_rational(a)))
                .collect(),
            lift_constant: format_rational(&stab.lift_constant),
            chow_top: format_rational(&stab.chow_top),
            chow_correction_coeff: format_rational(&chow_correction),
        },
        verification: VerificationSection {
            m_independence: MIndependenceSection {
                pass: true,
                m_from,
                m_to,
                constant: format_rational(&stab.lift_constant),
            },
            route_agreement: RouteAgreementSection {
                pass: true,
                f1_direct: format_rational(&stab.f1),
                f1_expansion: format_rational(&stab.f1_expansion),
                f1_from_cm: format_rational(&f1_from_cm),
            },
            cross_check: CrossCheckSection {
                enabled: job.options.cross_check,
                pass: true,
                max_m: if job.options.cross_check { m_max } else { 0 },
            },
        },
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(report)
}

/// Outcome of the m-independence table command.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub requested_from: u32,
    pub m_from: u32,
    pub m_to: u32,
    pub adjusted: bool,
    pub table: Vec<(u32, Rational)>,
    pub target: Rational,
    pub w_cm: Rational,
    pub failures: Vec<u32>,
}

/// Evaluate the lift table over `[m_from, m_to]`, clamping the start up to
/// the detected onset (with `adjusted` set). The optional `corrupt` hook
/// adds a delta to one cached weight value after fitting, for fault
/// injection in tests.
pub fn verify(
    job: &JobSpec,
    m_from: u32,
    m_to: u32,
    corrupt: Option<(u32, i64)>,
) -> Result<VerifyOutcome, PipelineError> {
    if m_to < m_from {
        return Err(PipelineError::Input(format!(
            "empty range: m_from = {m_from} > m_to = {m_to}"
        )));
    }
    let (ideal, lambda) = job.build()?;
    let fl = flat_limit(&ideal, &lambda).map_err(|e| PipelineError::Input(e.to_string()))?;
    let path = if job.options.fast_path {
        HilbertPath::Fast
    } else {
        HilbertPath::Enumeration
    };

    let auto = job.m_max.unwrap_or_else(|| default_m_max(&fl.lead));
    let profiles = fit_profiles(&fl.lead, &lambda, auto, path)?;
    let n = profiles.inv.dim_n;

    // Values must reach m_to + n + 1 for the alternating sums.
    let reach = m_to + n as u32 + 1;
    let Profiles { hp, inv, mut wp, .. } = if reach > profiles.m_max {
        guard_enumeration(fl.lead.num_vars(), reach + 2)?;
        fit_profiles(&fl.lead, &lambda, reach, path)?
    } else {
        profiles
    };

    let onset = hp.onset_m0.max(wp.onset_m0);
    let adjusted = m_from < onset;
    let m_from_eff = m_from.max(onset);
    if m_to < m_from_eff {
        return Err(PipelineError::Input(format!(
            "range [{m_from}, {m_to}] lies entirely below the onset {onset}"
        )));
    }

    if let Some((m, delta)) = corrupt {
        if let Some(entry) = wp.values.iter_mut().find(|(mm, _)| *mm == m) {
            entry.1 += delta;
        }
    }

    let check = verify_m_independence(
        &wp.values,
        n,
        &inv.mu,
        &wp.a_top(n),
        &wp.a_sub(n),
        m_from_eff,
        m_to,
        onset,
    )
    .map_err(from_stability)?;

    let f1 = cmweight::stability::futaki_f1(&wp, &inv).map_err(from_stability)?;
    let w_cm = cm_weight(&f1, inv.degree_d, n);

    Ok(VerifyOutcome {
        requested_from: m_from,
        m_from: m_from_eff,
        m_to,
        adjusted,
        table: check.table,
        target: check.target,
        w_cm,
        failures: check.failures,
    })
}

/// One row of the oracle dump: a standard monomial with its λ-pairing.
#[derive(Debug, Clone)]
pub struct OracleDump {
    pub m: u32,
    pub lead_ideal: Vec<String>,
    pub rows: Vec<(String, i64)>,
    pub pairing_total: i64,
    pub hilbert_weight: i64,
    pub hilbert_function: u64,
}

/// Brute-force dump of the degree-`m` standard monomials of the flat-limit
/// lead ideal, with per-monomial pairings and totals. The totals are
/// cross-checked against the pipeline's weight and Hilbert values.
pub fn oracle(job: &JobSpec, m: u32) -> Result<OracleDump, PipelineError> {
    let (ideal, lambda) = job.build()?;
    guard_enumeration(ideal.num_vars(), m)?;
    let fl = flat_limit(&ideal, &lambda).map_err(|e| PipelineError::Input(e.to_string()))?;

    let monomials = standard_monomials(&fl.lead, m);
    let rows: Vec<(String, i64)> = monomials
        .iter()
        .map(|mono| (mono.to_string(), lambda.pairing(mono)))
        .collect();
    let pairing_total: i64 = rows.iter().map(|(_, w)| *w).sum();

    let weight = hilbert_weight(&fl.lead, &lambda, m);
    let hf = hilbert_function(&fl.lead, m);
    if weight != -pairing_total || hf != rows.len() as u64 {
        return Err(PipelineError::Invariant(format!(
            "oracle totals disagree with the pipeline at m = {m}: \
             sum {pairing_total}, weight {weight}, count {} vs HF {hf}",
            rows.len()
        )));
    }

    Ok(OracleDump {
        m,
        lead_ideal: fl.lead.generators().iter().map(|g| g.to_string()).collect(),
        rows,
        pairing_total,
        hilbert_weight: weight,
        hilbert_function: hf,
    })
}

