//! Pick matrices `(t² − φ(λᵢ)φ̄(λⱼ)) k(λᵢ, λⱼ)`, their negative-square counts
//! and the bisection for `s_m` on a finite sample.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernelzoo::{
    condition_estimate, condition_warning, gram, nested_samples, CandidateFunction, Kernel,
    SampleSet, Sampler,
};
use crate::spectral::{eigenvalues, inertia_of_values, HermitianMatrix, Inertia, DEFAULT_REL_TOL};

/// Attached to every estimate: finite samples only see finitely many negative
/// squares.
pub const SAMPLE_CAVEAT: &str =
    "sample-relative estimate: a finite sample can only under-count negative squares, so this bracket bounds s_m from below";

/// The default inertia tolerance for single-shot inertia queries.
pub const INERTIA_REL_TOL: f64 = DEFAULT_REL_TOL;

pub(crate) fn serialize_extended<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

/// `K` and `D K D*` for one (kernel, function, sample) triple, so that the
/// Pick matrix at any `t` is `t² K − D K D*`.
#[derive(Clone, Debug)]
pub struct PickPencil {
    pub gram: HermitianMatrix,
    pub phi_values: Vec<Complex64>,
    dkd: DMatrix<Complex64>,
}

impl PickPencil {
    pub fn new(kernel: &Kernel, phi: &CandidateFunction, sample: &SampleSet) -> Result<PickPencil> {
        sample.validate(kernel, Some(phi))?;
        let gram = gram(kernel, sample)?;
        let phi_values = phi.eval_all(&sample.points)?;
        Ok(PickPencil::from_parts(gram, phi_values))
    }

    /// A pencil from an explicit Gram matrix and function values.
    pub fn from_parts(gram: HermitianMatrix, phi_values: Vec<Complex64>) -> PickPencil {
        assert_eq!(gram.dim(), phi_values.len(), "one value per Gram row");
        let d = DMatrix::from_diagonal(&DVector::from_vec(phi_values.clone()));
        let dkd = &d * gram.matrix() * d.adjoint();
        PickPencil {
            gram,
            phi_values,
            dkd,
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn at(&self, t: f64) -> HermitianMatrix {
        let m = self.gram.matrix() * Complex64::new(t * t, 0.0) - &self.dkd;
        HermitianMatrix::from_matrix(m)
    }

    pub fn inertia_at(&self, t: f64, rel_tol: f64) -> Result<Inertia> {
        Ok(inertia_of_values(&eigenvalues(&self.at(t))?, rel_tol))
    }

    /// Inertia of `S M(t) S` with `S = diag(K)^{-1/2}`: a diagonal congruence,
    /// so the counts are those of the Pick matrix, while the zero threshold
    /// no longer follows the largest diagonal entry of `K`.
    pub fn scaled_inertia_at(&self, t: f64, rel_tol: f64) -> Result<Inertia> {
        let m = self.at(t).into_matrix();
        let s: Vec<f64> = (0..self.dim())
            .map(|i| {
                let d = self.gram.matrix()[(i, i)].re;
                if d > 0.0 { 1.0 / d.sqrt() } else { 1.0 }
            })
            .collect();
        let scaled = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * (s[i] * s[j]));
        Ok(inertia_of_values(&eigenvalues(&HermitianMatrix::from_matrix(scaled))?, rel_tol))
    }

    pub fn max_abs_phi(&self) -> f64 {
        self.phi_values.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

pub fn pick_matrix(
    kernel: &Kernel,
    phi: &CandidateFunction,
    sample: &SampleSet,
    t: f64,
) -> Result<HermitianMatrix> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("t must be non-negative, got {t}")));
    }
    Ok(PickPencil::new(kernel, phi, sample)?.at(t))
}

#[derive(Clone, Debug, Serialize)]
pub struct PickProfile {
    pub kernel_id: String,
    pub function_id: String,
    pub sample: SampleSet,
    pub t_values: Vec<f64>,
    pub inertias: Vec<Inertia>,
    #[serde(serialize_with = "serialize_extended")]
    pub cond_k: f64,
    pub warnings: Vec<String>,
}

pub fn inertia_profile(
    kernel: &Kernel,
    phi: &CandidateFunction,
    sample: &SampleSet,
    t_values: &[f64],
    rel_tol: f64,
) -> Result<PickProfile> {
    if t_values.windows(2).any(|w| w[0] > w[1]) || t_values.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::InvalidArgument(
            "t values must be non-negative and ascending".into(),
        ));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument("relative tolerance must be positive".into()));
    }
    let pencil = PickPencil::new(kernel, phi, sample)?;
    let inertias = t_values
        .iter()
        .map(|&t| pencil.inertia_at(t, rel_tol))
        .collect::<Result<Vec<_>>>()?;
    let cond_k = condition_estimate(&pencil.gram);
    Ok(PickProfile {
        kernel_id: kernel.id(),
        function_id: phi.id().to_string(),
        sample: sample.clone(),
        t_values: t_values.to_vec(),
        inertias,
        cond_k,
        warnings: condition_warning(cond_k).into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BisectOptions {
    /// Starting upper bracket; `max|φ| + 1` on the sample when absent.
    pub t_hi_init: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    /// Relative zero tolerance shared by every inertia count of one run.
    pub rel_tol: f64,
    pub max_doublings: u32,
}

impl Default for BisectOptions {
    fn default() -> Self {
        BisectOptions {
            t_hi_init: None,
            tol: 1e-12,
            max_iter: 200,
            rel_tol: 1e-14,
            max_doublings: 60,
        }
    }
}

impl BisectOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        if let Some(t) = self.t_hi_init {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::InvalidArgument(format!("t_hi_init must be positive, got {t}")));
            }
        }
        Ok(())
    }
}

/// A bracket `[lower, upper]` for `inf{t : n_neg(pick(t)) ≤ m}` on one sample.
/// `upper` is infinite when the doubling cap was hit.
#[derive(Clone, Debug, Serialize)]
pub struct SmEstimate {
    pub m: usize,
    pub lower: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub upper: f64,
    pub unbounded: bool,
    pub iterations: usize,
    pub doublings: u32,
    /// `n_neg` at `upper`, or at the last doubled `t` when unbounded.
    pub n_neg_at_upper: usize,
    pub rel_tol: f64,
    pub sample: SampleSet,
    pub caveat: &'static str,
    pub warnings: Vec<String>,
}

impl SmEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower - slack <= x && x <= self.upper + slack
    }
}

pub fn bisect_sm(
    kernel: &Kernel,
    phi: &CandidateFunction,
    sample: &SampleSet,
    m: usize,
    opts: &BisectOptions,
) -> Result<SmEstimate> {
    let pencil = PickPencil::new(kernel, phi, sample)?;
    bisect_pencil(&pencil, sample, m, opts)
}

/// Bisection on a prepared pencil. Relies on `t ↦ n_neg(t² K − D K D*)`
/// being non-increasing when `K` is positive.
pub fn bisect_pencil(
    pencil: &PickPencil,
    sample: &SampleSet,
    m: usize,
    opts: &BisectOptions,
) -> Result<SmEstimate> {
    opts.validate()?;
    let rel_tol = opts.rel_tol;
    let n_neg = |t: f64| -> Result<usize> { Ok(pencil.scaled_inertia_at(t, rel_tol)?.n_neg) };
    let mut warnings = Vec::new();
    let mut est = SmEstimate {
        m,
        lower: 0.0,
        upper: 0.0,
        unbounded: false,
        iterations: 0,
        doublings: 0,
        n_neg_at_upper: 0,
        rel_tol,
        sample: sample.clone(),
        caveat: SAMPLE_CAVEAT,
        warnings: Vec::new(),
    };

    let at_zero = n_neg(0.0)?;
    if at_zero <= m {
        est.n_neg_at_upper = at_zero;
        return Ok(est);
    }

    let mut lower = 0.0;
    let mut upper = opts.t_hi_init.unwrap_or(pencil.max_abs_phi() + 1.0);
    let mut count = n_neg(upper)?;
    while count > m {
        if est.doublings >= opts.max_doublings {
            warnings.push(format!(
                "inertia condition n_neg <= {m} never held within {} doublings (t up to {upper:e}); not an {m}-pseudomultiplier at this sample scale",
                opts.max_doublings
            ));
            est.lower = upper;
            est.upper = f64::INFINITY;
            est.unbounded = true;
            est.n_neg_at_upper = count;
            est.warnings = warnings;
            return Ok(est);
        }
        lower = upper;
        upper *= 2.0;
        est.doublings += 1;
        count = n_neg(upper)?;
    }
    let mut upper_count = count;

    while upper - lower > opts.tol * upper.max(1.0) {
        if est.iterations >= opts.max_iter {
            warnings.push(format!(
                "bisection stopped after {} iterations with width {:e}",
                opts.max_iter,
                upper - lower
            ));
            break;
        }
        let mid = 0.5 * (lower + upper);
        let c = n_neg(mid)?;
        if c <= m {
            upper = mid;
            upper_count = c;
        } else {
            lower = mid;
        }
        est.iterations += 1;
    }
    est.lower = lower;
    est.upper = upper;
    est.n_neg_at_upper = upper_count;
    est.warnings = warnings;
    Ok(est)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub estimate: SmEstimate,
    #[serde(serialize_with = "serialize_extended")]
    pub cond_k: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub kernel_id: String,
    pub function_id: String,
    pub m: usize,
    pub rows: Vec<ConvergenceRow>,
    /// Whether the uppers are non-decreasing up to the bisection tolerance.
    pub non_decreasing: bool,
    pub warnings: Vec<String>,
}

impl ConvergenceTable {
    pub fn uppers(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.estimate.upper).collect()
    }
}

/// `bisect_sm` on nested samples of the given sizes.
pub fn sm_convergence(
    kernel: &Kernel,
    phi: &CandidateFunction,
    m: usize,
    sampler: &Sampler,
    sizes: &[usize],
    opts: &BisectOptions,
) -> Result<ConvergenceTable> {
    let samples = nested_samples(kernel, sampler, sizes, Some(phi))?;
    sm_convergence_on(kernel, phi, m, &samples, opts)
}

/// Same as [`sm_convergence`] on explicitly supplied nested samples.
pub fn sm_convergence_on(
    kernel: &Kernel,
    phi: &CandidateFunction,
    m: usize,
    samples: &[SampleSet],
    opts: &BisectOptions,
) -> Result<ConvergenceTable> {
    let mut rows = Vec::with_capacity(samples.len());
    let mut warnings = Vec::new();
    for sample in samples {
        let pencil = PickPencil::new(kernel, phi, sample)?;
        let cond_k = condition_estimate(&pencil.gram);
        if let Some(w) = condition_warning(cond_k) {
            warnings.push(format!("n = {}: {w}", sample.len()));
        }
        let estimate = bisect_pencil(&pencil, sample, m, opts)?;
        for w in &estimate.warnings {
            warnings.push(format!("n = {}: {w}", sample.len()));
        }
        rows.push(ConvergenceRow {
            n: sample.len(),
            estimate,
            cond_k,
        });
    }
    let non_decreasing = rows.windows(2).all(|w| {
        let (a, b) = (w[0].estimate.upper, w[1].estimate.upper);
        b >= a - opts.tol * a.max(1.0) * 10.0 || (a.is_infinite() && b.is_infinite())
    });
    if !non_decreasing {
        warnings.push("estimates decrease along nested samples beyond tolerance".into());
    }
    Ok(ConvergenceTable {
        kernel_id: kernel.id(),
        function_id: phi.id().to_string(),
        m,
        rows,
        non_decreasing,
        warnings,
    })
}
