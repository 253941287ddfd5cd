//! Golden catalog: each case binds a kernel, a function and a sample recipe
//! to checks with expected values, tolerances and provenance.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::classify::{classify, verify_multiplicity, ClassificationReport, ClassifyConfig, MinM, DEFAULT_M_MAX};
use crate::error::{Error, Result};
use crate::kernelzoo::{CandidateFunction, DomainPoint, Kernel, Sampler, SampleSet};
use crate::pick::{BisectOptions, PickPencil};
use crate::report::{to_json_text, write_atomic, Envelope, Tolerances};
use crate::spectral::DEFAULT_REL_TOL;

pub const CATALOG: &str = include_str!("../data/cases.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenanceKind {
    /// Value stated in the reference literature.
    Reference,
    /// Value that follows by inspection.
    Trivial,
    /// Value produced by an oracle computation and frozen.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen_hash: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Approx,
    AtMost,
    AtLeast,
    Equals,
}

impl Relation {
    fn holds(self, observed: f64, expected: f64, tol: f64) -> bool {
        match self {
            Relation::Approx => (observed - expected).abs() <= tol,
            Relation::AtMost => observed <= expected + tol,
            Relation::AtLeast => observed >= expected - tol,
            Relation::Equals => observed == expected,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Approx => "≈",
            Relation::AtMost => "≤",
            Relation::AtLeast => "≥",
            Relation::Equals => "=",
        }
    }
}

/// Expected minimal `m`: a number or the string `exceeds`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpectedMinM {
    Value(usize),
    Word(String),
}

impl ExpectedMinM {
    fn matches(&self, got: MinM) -> bool {
        match (self, got) {
            (ExpectedMinM::Value(a), MinM::Value(b)) => *a == b,
            (ExpectedMinM::Word(w), MinM::Exceeds { .. }) => w == "exceeds",
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum CheckKind {
    /// Bracket for `s_m` on the largest sample.
    Sm {
        m: usize,
        relation: Relation,
        expected: f64,
        tolerance: f64,
    },
    MinM { expected: ExpectedMinM },
    /// Negative-square count of the Pick matrix at `t` on the sample of size
    /// `n` (the largest when absent).
    InertiaAtT {
        t: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        relation: Relation,
        expected_n_neg: usize,
    },
    AnomalyAt { point: DomainPoint, min_alignment: f64 },
    PoleAlpha {
        expected: DomainPoint,
        tolerance: f64,
        #[serde(default)]
        max_residual: usize,
    },
    /// Solutions of `φ = ξ` on the largest sample must number at most `m`.
    Multiplicity { xi: Complex64, m: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    #[serde(flatten)]
    pub kind: CheckKind,
    pub provenance: Provenance,
}

impl Check {
    /// Hash binding a frozen value to its case and oracle note.
    pub fn fingerprint(&self, case_id: &str) -> String {
        let kind = serde_json::to_string(&self.kind).unwrap_or_default();
        let oracle = self.provenance.oracle.as_deref().unwrap_or("");
        let digest = Sha256::digest(format!("{case_id}|{kind}|{oracle}").as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn validate(&self, case_id: &str) -> Result<()> {
        let p = &self.provenance;
        if p.citation.trim().is_empty() {
            return Err(Error::InvalidArgument(format!("case {case_id}: check without citation")));
        }
        if p.kind == ProvenanceKind::Derived {
            if p.oracle.as_deref().map_or(true, |o| o.trim().is_empty()) {
                return Err(Error::InvalidArgument(format!(
                    "case {case_id}: derived check without an oracle note"
                )));
            }
            let want = self.fingerprint(case_id);
            if p.frozen_hash.as_deref() != Some(want.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "case {case_id}: frozen hash mismatch for {:?}, expected {want}",
                    self.kind
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    pub title: String,
    pub kernel_id: String,
    pub function_id: String,
    pub sampler: Sampler,
    pub sizes: Vec<usize>,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_point: Option<DomainPoint>,
    pub checks: Vec<Check>,
    /// Expectations that have no finite-sample test.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub narrative: Vec<String>,
}

fn default_m_max() -> usize {
    DEFAULT_M_MAX
}

impl CaseSpec {
    pub fn config(&self) -> ClassifyConfig {
        let mut cfg = ClassifyConfig::new(self.sampler.clone(), self.sizes.clone());
        cfg.m_max = self.m_max;
        cfg.reference_point = self.reference_point;
        cfg
    }

    pub fn seed(&self) -> Option<u64> {
        self.sampler.scheme.seed()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub quantity: String,
    pub description: String,
    pub passed: bool,
    pub observed: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub narrative: Vec<String>,
    pub report: ClassificationReport,
}

impl CaseOutcome {
    /// JSON document with the standard envelope.
    pub fn to_document(&self, spec: &CaseSpec) -> Result<Value> {
        let bisect = BisectOptions::default();
        let mut env = Envelope::new(
            &spec.kernel_id,
            &spec.function_id,
            spec.seed(),
            Tolerances::new(DEFAULT_REL_TOL, &bisect),
        );
        env.warnings = self.report.warnings.clone();
        env.wrap("case", self)
    }
}

/// The catalog, sorted by id, with every check validated.
pub fn list_cases() -> Result<Vec<CaseSpec>> {
    let mut cases: Vec<CaseSpec> = serde_json::from_str(CATALOG)?;
    for case in &cases {
        for check in &case.checks {
            check.validate(&case.id)?;
        }
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(cases)
}

pub fn find_case(id: &str) -> Result<CaseSpec> {
    let cases = list_cases()?;
    let valid = cases.iter().map(|c| c.id.clone()).collect();
    cases.into_iter().find(|c| c.id == id).ok_or(Error::UnknownId {
        kind: "case",
        id: id.to_string(),
        valid,
    })
}

pub fn run_case(id: &str) -> Result<CaseOutcome> {
    run_spec(&find_case(id)?)
}

/// Runs the case and writes `<dir>/<id>.json` atomically.
pub fn run_case_to(id: &str, dir: &Path) -> Result<CaseOutcome> {
    let spec = find_case(id)?;
    let outcome = run_spec(&spec)?;
    let doc = outcome.to_document(&spec)?;
    write_atomic(&dir.join(format!("{}.json", spec.id)), &to_json_text(&doc)?)?;
    Ok(outcome)
}

pub fn run_spec(spec: &CaseSpec) -> Result<CaseOutcome> {
    let kernel = Kernel::from_id(&spec.kernel_id)?;
    let phi = CandidateFunction::from_id(&spec.function_id)?;
    let report = classify(&kernel, &phi, &spec.config())?;
    let mut checks = Vec::new();
    for check in &spec.checks {
        checks.push(evaluate(check, &kernel, &phi, &report)?);
    }
    Ok(CaseOutcome {
        id: spec.id.clone(),
        title: spec.title.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        narrative: spec.narrative.clone(),
        report,
    })
}

fn sample_of_size<'a>(report: &'a ClassificationReport, n: Option<usize>) -> Result<&'a SampleSet> {
    match n {
        None => report
            .samples
            .last()
            .ok_or_else(|| Error::InvalidArgument("report has no samples".into())),
        Some(n) => report
            .samples
            .iter()
            .find(|s| s.len() == n)
            .ok_or_else(|| Error::InvalidArgument(format!("no sample of size {n}"))),
    }
}

fn evaluate(
    check: &Check,
    kernel: &Kernel,
    phi: &CandidateFunction,
    report: &ClassificationReport,
) -> Result<CheckResult> {
    let (quantity, description, passed, observed) = match &check.kind {
        CheckKind::Sm { m, relation, expected, tolerance } => {
            let (passed, observed) = match report.sm(*m) {
                Some(e) => {
                    let ok = match relation {
                        Relation::AtMost => relation.holds(e.upper, *expected, *tolerance),
                        Relation::AtLeast => relation.holds(e.lower, *expected, *tolerance),
                        _ => {
                            relation.holds(e.lower, *expected, *tolerance)
                                && relation.holds(e.upper, *expected, *tolerance)
                        }
                    };
                    let upper = if e.upper.is_finite() { Value::from(e.upper) } else { Value::Null };
                    (ok, serde_json::json!({"lower": e.lower, "upper": upper}))
                }
                None => (false, Value::Null),
            };
            (
                "sm",
                format!("s_{m} {} {expected} (tol {tolerance:e})", relation.symbol()),
                passed,
                observed,
            )
        }
        CheckKind::MinM { expected } => (
            "min_m",
            format!("min_m = {}", serde_json::to_string(expected)?),
            expected.matches(report.min_m_estimate),
            serde_json::to_value(report.min_m_estimate)?,
        ),
        CheckKind::InertiaAtT { t, n, relation, expected_n_neg } => {
            let sample = sample_of_size(report, *n)?;
            let inertia = PickPencil::new(kernel, phi, sample)?.inertia_at(*t, DEFAULT_REL_TOL)?;
            (
                "inertia_at_t",
                format!(
                    "n_neg at t = {t} on {} points {} {expected_n_neg}",
                    sample.len(),
                    relation.symbol()
                ),
                relation.holds(inertia.n_neg as f64, *expected_n_neg as f64, 0.0),
                serde_json::to_value(inertia)?,
            )
        }
        CheckKind::AnomalyAt { point, min_alignment } => {
            let score = report.anomaly_scan.as_ref().and_then(|scan| {
                let sample = report.samples.last()?;
                let i = sample.position(*point)?;
                scan.scores.get(i).copied()
            });
            (
                "anomaly_at",
                format!("anomaly at {point} with alignment ≥ {min_alignment}"),
                score.is_some_and(|s| s >= *min_alignment),
                score.map_or(Value::Null, Value::from),
            )
        }
        CheckKind::PoleAlpha { expected, tolerance, max_residual } => {
            let fit = report.pole_fit.as_ref();
            let passed = fit.is_some_and(|f| {
                (f.alpha.value() - expected.value()).norm() <= *tolerance && f.residual <= *max_residual
            });
            (
                "pole_alpha",
                format!("pole at {expected} within {tolerance}, residual ≤ {max_residual}"),
                passed,
                fit.map_or(Ok(Value::Null), |f| {
                    Ok::<_, Error>(serde_json::json!({"alpha": f.alpha, "residual": f.residual}))
                })?,
            )
        }
        CheckKind::Multiplicity { xi, m } => {
            let sample = sample_of_size(report, None)?;
            let upper = report.sm(*m).map_or(f64::INFINITY, |e| e.upper);
            let res = verify_multiplicity(phi, sample, *xi, upper, *m);
            let (passed, observed) = match res {
                Ok(c) => (c.bound_respected, serde_json::to_value(&c)?),
                Err(e) => (false, Value::String(e.to_string())),
            };
            ("multiplicity", format!("solutions of φ = {xi} number at most {m}"), passed, observed)
        }
    };
    Ok(CheckResult {
        quantity: quantity.to_string(),
        description,
        passed,
        observed,
        provenance: check.provenance.clone(),
    })
}
