//! Classification of a candidate function: minimal m, anomalies, pole form,
//! multiplicity spot checks.

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finite::{
    finite_sm, limit_vector, schmidt_split, FiniteMultiplier, LimitVectorTrace, SchmidtSplit,
    GAP_TOL,
};
use crate::kernelzoo::{
    condition_estimate, condition_warning, gram, nested_samples, CandidateFunction, DomainPoint,
    Kernel, SampleSet, Sampler,
};
use crate::pick::{bisect_pencil, BisectOptions, PickPencil, SmEstimate};

pub const DEFAULT_M_MAX: usize = 8;
/// Relative band within which estimates on the two largest samples count as
/// the same value.
pub const STABILITY_BAND: f64 = 0.10;
/// Estimates within this factor of the tolerance ceiling
/// `max|φ| / √rel_tol` are resolution-limited, not stable.
pub const CEILING_MARGIN: f64 = 1e-2;
pub const ANOMALY_THRESHOLD: f64 = 0.99;
pub const MULTIPLICITY_TOL: f64 = 1e-8;
/// Relative inflation of `s₀` at which the pole-fit residual is counted.
pub const POLE_FIT_INFLATION: f64 = 1e-6;

pub const NOTE_SINGULARITY: &str = "defect read from the candidate's undefined points; singularities in the sense of non-removable extensions are not searched for";
pub const NOTE_EXTENSION: &str =
    "extension undecidable at sample scale: an anomaly may or may not admit a value that yields a multiplier";
pub const NOTE_POLE_DEGENERATE: &str = "multiplier; pole form degenerate";

/// Smallest `m` with a stable estimate, or `exceeds` when none up to `m_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinM {
    Value(usize),
    Exceeds { m_max: usize },
}

impl MinM {
    pub fn value(self) -> Option<usize> {
        match self {
            MinM::Value(m) => Some(m),
            MinM::Exceeds { .. } => None,
        }
    }
}

impl Serialize for MinM {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinM::Value(m) => s.serialize_u64(*m as u64),
            MinM::Exceeds { .. } => s.serialize_str("exceeds"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinMTrial {
    pub m: usize,
    pub n_small: usize,
    pub n_large: usize,
    #[serde(serialize_with = "crate::pick::serialize_extended")]
    pub upper_small: f64,
    #[serde(serialize_with = "crate::pick::serialize_extended")]
    pub upper_large: f64,
    #[serde(serialize_with = "crate::pick::serialize_extended")]
    pub ceiling: f64,
    pub stable: bool,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinMEstimate {
    pub min_m: MinM,
    pub defect: usize,
    pub trials: Vec<MinMTrial>,
}

/// Undefined points of `phi` that lie in the kernel's domain.
pub fn defect_points(kernel: &Kernel, phi: &CandidateFunction) -> Vec<DomainPoint> {
    phi.undefined_points()
        .iter()
        .copied()
        .filter(|&p| kernel.contains(p))
        .collect()
}

fn judge(small: &SmEstimate, large: &SmEstimate, ceiling: f64) -> (bool, String) {
    if small.unbounded || large.unbounded {
        return (false, "doubling cap hit".into());
    }
    if small.upper >= ceiling || large.upper >= ceiling {
        return (false, "estimate at the tolerance resolution ceiling".into());
    }
    let (a, b) = (small.upper, large.upper);
    let top = a.max(b);
    if top == 0.0 || (b - a).abs() <= STABILITY_BAND * top {
        (true, "stable".into())
    } else {
        (false, format!("estimate moved by {:.1}% between the two largest samples", 100.0 * (b - a).abs() / top))
    }
}

/// Smallest `m ≤ m_max` (starting at the defect) whose estimates on the two
/// largest samples agree within the stability band without hitting the
/// doubling cap or the resolution ceiling.
pub fn estimate_min_m(
    kernel: &Kernel,
    phi: &CandidateFunction,
    samples: &[SampleSet],
    m_max: usize,
    opts: &BisectOptions,
) -> Result<MinMEstimate> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(
            "estimate_min_m needs at least two nested samples".into(),
        ));
    }
    let small_s = &samples[samples.len() - 2];
    let large_s = &samples[samples.len() - 1];
    let small = PickPencil::new(kernel, phi, small_s)?;
    let large = PickPencil::new(kernel, phi, large_s)?;
    let ceiling = large.max_abs_phi() / opts.rel_tol.sqrt() * CEILING_MARGIN;
    let defect = defect_points(kernel, phi).len();
    let mut trials = Vec::new();
    for m in defect..=m_max {
        if m >= small_s.len() {
            break;
        }
        let a = bisect_pencil(&small, small_s, m, opts)?;
        let b = bisect_pencil(&large, large_s, m, opts)?;
        let (stable, reason) = judge(&a, &b, ceiling);
        trials.push(MinMTrial {
            m,
            n_small: small_s.len(),
            n_large: large_s.len(),
            upper_small: a.upper,
            upper_large: b.upper,
            ceiling,
            stable,
            reason,
        });
        if stable {
            return Ok(MinMEstimate {
                min_m: MinM::Value(m),
                defect,
                trials,
            });
        }
    }
    Ok(MinMEstimate {
        min_m: MinM::Exceeds { m_max },
        defect,
        trials,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AnomalyCandidate {
    pub point: DomainPoint,
    pub alignment: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnomalyScan {
    pub candidates: Vec<AnomalyCandidate>,
    /// Alignment of the maximiser with every sample point, in sample order.
    pub scores: Vec<f64>,
    pub non_unique_maximiser: bool,
    pub threshold: f64,
}

/// Alignment of the top Schmidt vector `f` of `T_F*` with each `k_α`,
/// `α ∈ F`. Points at or above the threshold are anomaly candidates.
pub fn detect_anomalies(
    kernel: &Kernel,
    phi: &CandidateFunction,
    sample: &SampleSet,
) -> Result<AnomalyScan> {
    let fm = FiniteMultiplier::new(kernel, phi, sample)?;
    let svd = fm.svd()?;
    let s = &svd.values;
    let degenerate = s.len() < 2 || s[0] - s[1] < GAP_TOL * s[0].max(1.0);
    if degenerate {
        return Ok(AnomalyScan {
            candidates: Vec::new(),
            scores: Vec::new(),
            non_unique_maximiser: true,
            threshold: ANOMALY_THRESHOLD,
        });
    }
    let f: DVector<Complex64> = svd.left.column(0).into_owned();
    let kf = fm.gram.matrix() * &f;
    let norm = crate::spectral::k_norm(&fm.gram, &f);
    let scores: Vec<f64> = (0..sample.len())
        .map(|i| {
            let kii = fm.gram.matrix()[(i, i)].re;
            kf[i].norm() / (norm * kii.sqrt())
        })
        .collect();
    let candidates = scores
        .iter()
        .enumerate()
        .filter(|(_, &a)| a >= ANOMALY_THRESHOLD)
        .map(|(i, &a)| AnomalyCandidate {
            point: sample.points[i],
            alignment: a,
        })
        .collect();
    Ok(AnomalyScan {
        candidates,
        scores,
        non_unique_maximiser: false,
        threshold: ANOMALY_THRESHOLD,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleTrial {
    pub alpha: DomainPoint,
    pub s0: f64,
    pub residual: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleFit {
    pub alpha: DomainPoint,
    pub residual: usize,
    pub s0: f64,
    pub grid_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub trials: Vec<PoleTrial>,
}

/// `{c + x + iy : x, y ∈ {−extent, ..., extent}}` with the given step.
pub fn square_grid(center: Complex64, extent: f64, step: f64) -> Vec<Complex64> {
    let k = (extent / step).round() as i64;
    let mut out = Vec::with_capacity(((2 * k + 1) * (2 * k + 1)) as usize);
    for i in -k..=k {
        for j in -k..=k {
            out.push(center + Complex64::new(i as f64 * step, j as f64 * step));
        }
    }
    out
}

/// The default search grid: step 0.1 over `[−0.5, 0.5]²` on the unit disc,
/// over the enclosing square of the off-center disc, and over `[−1.5, 1.5]²`
/// on the plane.
pub fn default_alpha_grid(kernel: &Kernel) -> Vec<Complex64> {
    match kernel.domain_kind().disc() {
        Some((c, r)) if r < 1.0 => square_grid(c, r, 0.1),
        Some(_) => square_grid(Complex64::new(0.0, 0.0), 0.5, 0.1),
        None => square_grid(Complex64::new(0.0, 0.0), 1.5, 0.1),
    }
}

/// Searches `alpha_grid` for the `α` making `θ_α(λ) = (λ − α) φ(λ)` pass the
/// multiplier test. `s₀(θ_α)` is taken on the smaller of the two largest
/// samples; the residual is the number of negative squares of the `θ_α` Pick
/// matrix at `s₀ (1 + 1e-6)`, summed over both samples.
pub fn fit_pole_form(
    kernel: &Kernel,
    phi: &CandidateFunction,
    samples: &[SampleSet],
    alpha_grid: &[Complex64],
    rel_tol: f64,
) -> Result<PoleFit> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidArgument("pole-fit grid is empty".into()));
    }
    if !kernel.domain_kind().is_planar() {
        return Err(Error::Precondition(format!(
            "pole-form fit needs an analytic domain, kernel `{}` lives on {}",
            kernel.id(),
            kernel.domain_kind()
        )));
    }
    let (small_s, large_s) = match samples {
        [] => return Err(Error::InvalidArgument("at least one sample is required".into())),
        [only] => (only, only),
        [.., a, b] => (a, b),
    };
    small_s.validate(kernel, Some(phi))?;
    large_s.validate(kernel, Some(phi))?;
    let k_small = gram(kernel, small_s)?;
    let k_large = gram(kernel, large_s)?;
    let phi_small = phi.eval_all(&small_s.points)?;
    let phi_large = phi.eval_all(&large_s.points)?;

    let theta = |pts: &SampleSet, vals: &[Complex64], alpha: Complex64| -> Vec<Complex64> {
        pts.points
            .iter()
            .zip(vals)
            .map(|(p, v)| (p.value() - alpha) * v)
            .collect()
    };

    let mut trials = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let th_small = theta(small_s, &phi_small, alpha);
        let fm = FiniteMultiplier::from_parts(k_small.clone(), th_small.clone())?;
        let s0 = finite_sm(&fm, 0)?;
        let t = s0 * (1.0 + POLE_FIT_INFLATION);
        let mut residual = PickPencil::from_parts(k_small.clone(), th_small)
            .inertia_at(t, rel_tol)?
            .n_neg;
        if !std::ptr::eq(small_s, large_s) {
            let th_large = theta(large_s, &phi_large, alpha);
            residual += PickPencil::from_parts(k_large.clone(), th_large)
                .inertia_at(t, rel_tol)?
                .n_neg;
        }
        trials.push(PoleTrial {
            alpha: DomainPoint::from(alpha),
            s0,
            residual,
        });
    }
    // φ itself passing the test makes every θ_α a multiplier; grid residuals
    // are then sampling artefacts of the factor λ − α.
    let fm = FiniteMultiplier::from_parts(k_small.clone(), phi_small.clone())?;
    let t = finite_sm(&fm, 0)? * (1.0 + POLE_FIT_INFLATION);
    let mut phi_residual = PickPencil::from_parts(k_small.clone(), phi_small.clone())
        .inertia_at(t, rel_tol)?
        .n_neg;
    if !std::ptr::eq(small_s, large_s) {
        phi_residual += PickPencil::from_parts(k_large.clone(), phi_large.clone())
            .inertia_at(t, rel_tol)?
            .n_neg;
    }
    let degenerate = phi_residual == 0 || trials.iter().all(|t| t.residual == 0);
    let mut best = trials
        .iter()
        .min_by(|a, b| {
            let (ra, rb) = if degenerate { (0, 0) } else { (a.residual, b.residual) };
            ra.cmp(&rb)
                .then(a.alpha.value().norm().total_cmp(&b.alpha.value().norm()))
        })
        .expect("non-empty grid")
        .clone();
    if degenerate {
        best.residual = 0;
    }
    let note = degenerate.then(|| NOTE_POLE_DEGENERATE.to_string());
    Ok(PoleFit {
        alpha: best.alpha,
        residual: best.residual,
        s0: best.s0,
        grid_size: trials.len(),
        note,
        trials,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityCheck {
    pub xi: Complex64,
    pub m: usize,
    pub count: usize,
    pub bound_respected: bool,
}

/// Counts sample points with `|φ(λ) − ξ| ≤ 1e-8 (1 + |ξ|)`; at most `m` are
/// allowed once `|ξ|` exceeds `s_m`.
pub fn verify_multiplicity(
    phi: &CandidateFunction,
    sample: &SampleSet,
    xi: Complex64,
    s_m_upper: f64,
    m: usize,
) -> Result<MultiplicityCheck> {
    if !(xi.norm() > s_m_upper) {
        return Err(Error::Precondition(format!(
            "|ξ| = {} does not exceed s_m upper bound {s_m_upper}",
            xi.norm()
        )));
    }
    let tol = MULTIPLICITY_TOL * (1.0 + xi.norm());
    let mut count = 0;
    for &p in &sample.points {
        if phi.is_defined_at(p) && (phi.eval(p)? - xi).norm() <= tol {
            count += 1;
        }
    }
    Ok(MultiplicityCheck {
        xi,
        m,
        count,
        bound_respected: count <= m,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyConfig {
    pub sampler: Sampler,
    pub sizes: Vec<usize>,
    pub m_max: usize,
    pub bisect: BisectOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_grid: Option<Vec<Complex64>>,
    /// Extra multiplicity spot checks beyond the default `ξ = 2 s_m`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub multiplicity_xis: Vec<Complex64>,
    /// Point whose kernel direction the limit-vector trace is compared with.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_point: Option<DomainPoint>,
}

impl ClassifyConfig {
    pub fn new(sampler: Sampler, sizes: Vec<usize>) -> Self {
        ClassifyConfig {
            sampler,
            sizes,
            m_max: DEFAULT_M_MAX,
            bisect: BisectOptions::default(),
            alpha_grid: None,
            multiplicity_xis: Vec::new(),
            reference_point: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub kernel_id: String,
    pub function_id: String,
    pub sample_sizes: Vec<usize>,
    pub min_m_estimate: MinM,
    pub min_m_trials: Vec<MinMTrial>,
    pub sm_by_m: BTreeMap<usize, SmEstimate>,
    pub defect_points: Vec<DomainPoint>,
    pub anomaly_candidates: Vec<AnomalyCandidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anomaly_scan: Option<AnomalyScan>,
    pub pole_fit: Option<PoleFit>,
    pub multiplicity_checks: Vec<MultiplicityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_split: Option<SchmidtSplit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_vector_trace: Option<LimitVectorTrace>,
    #[serde(serialize_with = "crate::pick::serialize_extended")]
    pub cond_k: f64,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub samples: Vec<SampleSet>,
}

impl ClassificationReport {
    pub fn sm(&self, m: usize) -> Option<&SmEstimate> {
        self.sm_by_m.get(&m)
    }

    /// Whether the uppers are non-increasing in `m` up to `tol`.
    pub fn sm_monotone(&self, tol: f64) -> bool {
        let uppers: Vec<f64> = self.sm_by_m.values().map(|e| e.upper).collect();
        uppers
            .windows(2)
            .all(|w| w[1] <= w[0] + tol * w[0].max(1.0) || w[0].is_infinite())
    }
}

/// `t0` for the split at `m`: above `s_m`, and for `m ≥ 1` as close to
/// `s_{m-1}` as allowed, so the `m` eigenvalues above one stay well scaled.
pub fn split_scale(fm: &FiniteMultiplier, m: usize) -> Result<f64> {
    let sm = finite_sm(fm, m)?;
    let t0 = if m == 0 {
        sm
    } else {
        (sm * (1.0 + POLE_FIT_INFLATION)).max(finite_sm(fm, m - 1)? * (1.0 - 1e-3))
    };
    Ok(t0.max(f64::MIN_POSITIVE))
}

pub fn classify(
    kernel: &Kernel,
    phi: &CandidateFunction,
    config: &ClassifyConfig,
) -> Result<ClassificationReport> {
    let samples = nested_samples(kernel, &config.sampler, &config.sizes, Some(phi))?;
    classify_on(kernel, phi, &samples, config)
}

/// [`classify`] on explicitly supplied nested samples.
pub fn classify_on(
    kernel: &Kernel,
    phi: &CandidateFunction,
    samples: &[SampleSet],
    config: &ClassifyConfig,
) -> Result<ClassificationReport> {
    let largest = samples
        .last()
        .ok_or_else(|| Error::InvalidArgument("no samples".into()))?;
    let mut warnings = Vec::new();
    let mut notes = vec![NOTE_SINGULARITY.to_string()];
    let cond_k = condition_estimate(&gram(kernel, largest)?);
    if let Some(w) = condition_warning(cond_k) {
        warnings.push(w);
    }

    let min_m = estimate_min_m(kernel, phi, samples, config.m_max, &config.bisect)?;
    for t in &min_m.trials {
        if t.reason == "doubling cap hit" {
            warnings.push(format!("m = {}: doubling cap hit", t.m));
        }
    }

    let pencil = PickPencil::new(kernel, phi, largest)?;
    let table_top = min_m.min_m.value().unwrap_or(0).max(3).min(largest.len() - 1);
    let mut sm_by_m = BTreeMap::new();
    for m in 0..=table_top {
        let est = bisect_pencil(&pencil, largest, m, &config.bisect)?;
        for w in &est.warnings {
            warnings.push(format!("s_{m}: {w}"));
        }
        sm_by_m.insert(m, est);
    }

    let mut report = ClassificationReport {
        kernel_id: kernel.id(),
        function_id: phi.id().to_string(),
        sample_sizes: samples.iter().map(|s| s.len()).collect(),
        min_m_estimate: min_m.min_m,
        min_m_trials: min_m.trials,
        sm_by_m,
        defect_points: defect_points(kernel, phi),
        anomaly_candidates: Vec::new(),
        anomaly_scan: None,
        pole_fit: None,
        multiplicity_checks: Vec::new(),
        schmidt_split: None,
        limit_vector_trace: None,
        cond_k,
        warnings,
        notes: Vec::new(),
        samples: samples.to_vec(),
    };

    let Some(m) = min_m.min_m.value() else {
        report.notes = notes;
        return Ok(report);
    };

    if m == 1 {
        match detect_anomalies(kernel, phi, largest) {
            Ok(scan) => {
                if scan.non_unique_maximiser {
                    report.warnings.push("anomaly scan: non-unique maximiser".into());
                }
                report.anomaly_candidates = scan.candidates.clone();
                if !scan.candidates.is_empty() {
                    notes.push(NOTE_EXTENSION.to_string());
                }
                report.anomaly_scan = Some(scan);
            }
            Err(e) => report.warnings.push(format!("anomaly scan failed: {e}")),
        }
        if kernel.domain_kind().is_planar() && !report.defect_points.is_empty() {
            let grid = config
                .alpha_grid
                .clone()
                .unwrap_or_else(|| default_alpha_grid(kernel));
            match fit_pole_form(kernel, phi, samples, &grid, config.bisect.rel_tol) {
                Ok(fit) => {
                    if let Some(n) = &fit.note {
                        notes.push(n.clone());
                    }
                    report.pole_fit = Some(fit);
                }
                Err(e) => report.warnings.push(format!("pole fit failed: {e}")),
            }
        }
    }

    if m > 0 || report.sm_by_m.get(&0).is_some_and(|e| !e.unbounded) {
        match limit_vector(kernel, phi, samples, m.max(1), config.reference_point) {
            Ok(trace) => {
                report.warnings.extend(trace.warnings.iter().map(|w| format!("limit vector: {w}")));
                report.limit_vector_trace = Some(trace);
            }
            Err(e) => report.warnings.push(format!("limit vector failed: {e}")),
        }
    }

    match FiniteMultiplier::new(kernel, phi, &samples[0]).and_then(|fm| {
        let t0 = split_scale(&fm, m.min(fm.dim() - 1))?;
        schmidt_split(&fm, m.min(fm.dim() - 1), t0)
    }) {
        Ok(split) => report.schmidt_split = Some(split),
        Err(e) => report.warnings.push(format!("Schmidt split failed: {e}")),
    }

    let mut xis: Vec<(Complex64, usize)> = Vec::new();
    if let Some(est) = report.sm_by_m.get(&m) {
        if est.upper.is_finite() && est.upper > 0.0 {
            xis.push((Complex64::new(2.0 * est.upper, 0.0), m));
        }
    }
    for &xi in &config.multiplicity_xis {
        xis.push((xi, m));
    }
    for (xi, m) in xis {
        let upper = report.sm_by_m.get(&m).map_or(f64::INFINITY, |e| e.upper);
        match verify_multiplicity(phi, largest, xi, upper, m) {
            Ok(check) => {
                if !check.bound_respected {
                    report.warnings.push(format!(
                        "multiplicity bound violated at ξ = {}: {} solutions for m = {m}",
                        DomainPoint::from(xi),
                        check.count
                    ));
                }
                report.multiplicity_checks.push(check);
            }
            Err(e) => report.notes.push(format!("multiplicity check skipped: {e}")),
        }
    }
    notes.append(&mut report.notes);
    report.notes = notes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_counts_near_solutions() {
        let phi = CandidateFunction::from_id("inv_z").unwrap();
        let s = SampleSet::from_reals(&[0.25, 0.5, -0.25]).unwrap();
        let c = verify_multiplicity(&phi, &s, Complex64::new(4.0, 0.0), 1.0, 1).unwrap();
        assert_eq!((c.count, c.bound_respected), (1, true));
        let none = verify_multiplicity(&phi, &s, Complex64::new(7.0, 1.0), 1.0, 1).unwrap();
        assert_eq!((none.count, none.bound_respected), (0, true));
        assert!(verify_multiplicity(&phi, &s, Complex64::new(0.5, 0.0), 1.0, 1).is_err());
    }

    #[test]
    fn min_m_serializes_as_number_or_word() {
        assert_eq!(serde_json::to_string(&MinM::Value(2)).unwrap(), "2");
        assert_eq!(
            serde_json::to_string(&MinM::Exceeds { m_max: 8 }).unwrap(),
            "\"exceeds\""
        );
    }

    #[test]
    fn grid_shape() {
        let g = square_grid(Complex64::new(0.0, 0.0), 0.5, 0.1);
        assert_eq!(g.len(), 121);
        assert!(g.iter().any(|z| z.norm() < 1e-12));
        let k = Kernel::from_id("szego_offcenter").unwrap();
        assert!(default_alpha_grid(&k).iter().all(|z| (z - Complex64::new(0.5, 0.0)).norm() <= 0.5 * 2f64.sqrt() + 1e-12));
    }

    #[test]
    fn constant_function_has_no_anomaly() {
        let k = Kernel::from_id("szego").unwrap();
        let phi = CandidateFunction::from_id("one").unwrap();
        let s = SampleSet::from_reals(&[0.0, 0.3, -0.5]).unwrap();
        let scan = detect_anomalies(&k, &phi, &s).unwrap();
        assert!(scan.candidates.is_empty() && scan.non_unique_maximiser);
    }
}
