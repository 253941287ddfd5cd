//! Multiplication operators on the span of finitely many kernel functions:
//! s-numbers, the rank-m Schmidt split and the limit-vector trace.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernelzoo::{gram, CandidateFunction, DomainPoint, Kernel, SampleSet};
use crate::spectral::{
    hermitian_eigs, k_svd, CongruenceRoot, HermitianMatrix, KSvd, PD_REL_TOL,
};

/// Eigenvalues of `T*T/t0²` above `1 + SPLIT_TOL` must number at most `m`.
pub const SPLIT_TOL: f64 = 1e-9;
/// Singular values closer than this (relative) make the maximiser non-unique.
pub const GAP_TOL: f64 = 1e-8;

/// `T_F k_λ = ψ̄(λ) k_λ` on `span{k_λ : λ ∈ F}`, written in the `k_λ` basis.
#[derive(Clone, Debug)]
pub struct FiniteMultiplier {
    pub sample: Option<SampleSet>,
    pub gram: HermitianMatrix,
    pub psi_values: Vec<Complex64>,
    pub conj_matrix: DMatrix<Complex64>,
    root: CongruenceRoot,
}

impl FiniteMultiplier {
    pub fn new(kernel: &Kernel, phi: &CandidateFunction, sample: &SampleSet) -> Result<Self> {
        sample.validate(kernel, Some(phi))?;
        let k = gram(kernel, sample)?;
        let psi = phi.eval_all(&sample.points)?;
        let mut fm = FiniteMultiplier::from_parts(k, psi)?;
        fm.sample = Some(sample.clone());
        Ok(fm)
    }

    /// A multiplier on an abstract positive-definite Gram matrix.
    pub fn from_parts(gram: HermitianMatrix, psi_values: Vec<Complex64>) -> Result<Self> {
        if gram.dim() != psi_values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} function values for a {}x{} Gram matrix",
                psi_values.len(),
                gram.dim(),
                gram.dim()
            )));
        }
        let root = CongruenceRoot::new(&gram, PD_REL_TOL)?;
        let conj = DVector::from_iterator(psi_values.len(), psi_values.iter().map(|z| z.conj()));
        Ok(FiniteMultiplier {
            sample: None,
            gram,
            psi_values,
            conj_matrix: DMatrix::from_diagonal(&conj),
            root,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    /// The matrix of `T_F` in a K-orthonormal frame.
    pub fn frame_matrix(&self) -> DMatrix<Complex64> {
        self.root.conjugate(&self.conj_matrix)
    }

    pub fn root(&self) -> &CongruenceRoot {
        &self.root
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.frame_matrix().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn svd(&self) -> Result<KSvd> {
        k_svd(&self.conj_matrix, &self.gram)
    }

    /// `‖T x‖_K / ‖x‖_K`.
    pub fn rayleigh(&self, x: &DVector<Complex64>) -> f64 {
        let rx = &self.root.root * x;
        let rtx = &self.root.root * (&self.conj_matrix * x);
        rtx.norm() / rx.norm()
    }
}

/// The `(m+1)`-th largest K-singular value of `T_F`.
pub fn finite_sm(fm: &FiniteMultiplier, m: usize) -> Result<f64> {
    if m >= fm.dim() {
        return Err(Error::InvalidArgument(format!(
            "m = {m} but the sample has only {} points",
            fm.dim()
        )));
    }
    Ok(fm.singular_values()[m])
}

/// `T*T/t0² = B + Σ uⱼ uⱼ^{*K}` with `0 ⪯ B ⪯ I`.
#[derive(Clone, Debug, Serialize)]
pub struct SchmidtSplit {
    pub m: usize,
    pub t0: f64,
    /// `B` in Gram form `K·B`, which is Hermitian.
    pub b: HermitianMatrix,
    /// Eigenvalues of `B` in the K-inner product, ascending.
    pub b_spectrum: Vec<f64>,
    /// Coefficient vectors of the `uⱼ`.
    pub u_vectors: Vec<Vec<Complex64>>,
    /// Eigenvalues of `T*T/t0²`, descending.
    pub sigma: Vec<f64>,
    /// `‖T*T/t0² − B − Σ uⱼuⱼ^{*K}‖` in the K-operator norm.
    pub residual: f64,
}

fn phase_fix(v: &mut DVector<Complex64>) {
    let Some((idx, _)) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
    else {
        return;
    };
    let z = v[idx];
    if z.norm() > 0.0 {
        let phase = z.conj() / z.norm();
        *v *= phase;
    }
}

fn to_vec(v: &DVector<Complex64>) -> Vec<Complex64> {
    v.iter().copied().collect()
}

pub fn schmidt_split(fm: &FiniteMultiplier, m: usize, t0: f64) -> Result<SchmidtSplit> {
    if !(t0 > 0.0) || !t0.is_finite() {
        return Err(Error::InvalidArgument(format!("t0 must be positive, got {t0}")));
    }
    let n = fm.dim();
    // Work in a K-orthonormal frame, where the K-adjoint is the conjugate
    // transpose and the K-operator norm is the spectral norm.
    let c = fm.frame_matrix();
    let scale = Complex64::new(1.0 / (t0 * t0), 0.0);
    let g = HermitianMatrix::from_matrix(c.adjoint() * &c * scale);
    let eig = hermitian_eigs(&g)?;
    let sigma: Vec<f64> = eig.values.iter().rev().copied().collect();
    let over = sigma.iter().filter(|&&s| s > 1.0 + SPLIT_TOL).count();
    if over > m {
        return Err(Error::Precondition(format!(
            "{over} eigenvalues of T*T/t0² exceed 1 at t0 = {t0}, more than m = {m}; t0 is below s_m on this sample"
        )));
    }

    let root = fm.root();
    let mut u_vectors = Vec::new();
    let mut correction = DMatrix::<Complex64>::zeros(n, n);
    let mut b_frame = DMatrix::<Complex64>::zeros(n, n);
    for (j, &s) in sigma.iter().enumerate() {
        let w = eig.vectors.column(n - 1 - j).into_owned();
        let clipped = if j < m && s > 1.0 {
            let u = &w * Complex64::new((s - 1.0).sqrt(), 0.0);
            correction += &u * u.adjoint();
            let mut coeffs = &root.inverse * &u;
            phase_fix(&mut coeffs);
            u_vectors.push(to_vec(&coeffs));
            1.0
        } else {
            s
        };
        b_frame += &w * w.adjoint() * Complex64::new(clipped, 0.0);
    }
    let b_frame = HermitianMatrix::from_matrix(b_frame);
    let b_spectrum = hermitian_eigs(&b_frame)?.values;
    let recon = g.matrix() - b_frame.matrix() - correction;
    let residual = recon.singular_values().iter().fold(0.0f64, |a, &x| a.max(x));
    let b = HermitianMatrix::from_matrix(&root.root * b_frame.matrix() * &root.root);

    Ok(SchmidtSplit {
        m,
        t0,
        b,
        b_spectrum,
        u_vectors,
        sigma,
        residual,
    })
}

/// Top Schmidt vectors of `T_F*` across nested samples.
#[derive(Clone, Debug, Serialize)]
pub struct LimitVectorTrace {
    pub m: usize,
    pub sizes: Vec<usize>,
    #[serde(skip)]
    pub samples: Vec<SampleSet>,
    /// Unit K-norm coefficient vectors, largest coefficient real positive.
    /// For `m > 1` the first of the `m` top vectors.
    pub f_vectors: Vec<Vec<Complex64>>,
    /// The leading `m + 1` singular values per sample.
    pub top_singular_values: Vec<Vec<f64>>,
    /// Between consecutive samples: `|⟨f_small, f_large⟩_K|` after
    /// zero-extension, or the smallest principal cosine of the top-m
    /// subspaces when `m > 1`.
    pub overlap_sequence: Vec<f64>,
    pub non_unique: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<DomainPoint>,
    /// `|f(α)| / (‖f‖ √k(α,α))` per sample for the reference point `α`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reference_alignment: Vec<f64>,
    pub warnings: Vec<String>,
}

impl LimitVectorTrace {
    pub fn any_non_unique(&self) -> bool {
        self.non_unique.iter().any(|&b| b)
    }
}

/// `|⟨f, k_α⟩| / (‖f‖_K ‖k_α‖)` for a coefficient vector `f` on `sample`.
pub fn alignment_with_point(
    kernel: &Kernel,
    sample: &SampleSet,
    gram: &HermitianMatrix,
    f: &DVector<Complex64>,
    alpha: DomainPoint,
) -> Result<f64> {
    kernel.check(alpha)?;
    let value: Complex64 = sample
        .points
        .iter()
        .zip(f.iter())
        .map(|(&p, c)| c * kernel.eval(alpha, p))
        .sum();
    let norm = crate::spectral::k_norm(gram, f);
    let kaa = kernel.eval(alpha, alpha).re;
    if norm == 0.0 || kaa <= 0.0 {
        return Ok(0.0);
    }
    Ok(value.norm() / (norm * kaa.sqrt()))
}

fn is_prefix(small: &SampleSet, large: &SampleSet) -> bool {
    small.len() <= large.len() && small.points.iter().zip(&large.points).all(|(a, b)| a == b)
}

/// K-orthonormal basis of the columns of `q`, expressed in the frame `R q`.
fn frame_basis(root: &CongruenceRoot, q: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&root.root * q).qr().q()
}

pub fn limit_vector(
    kernel: &Kernel,
    phi: &CandidateFunction,
    samples: &[SampleSet],
    m: usize,
    reference: Option<DomainPoint>,
) -> Result<LimitVectorTrace> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let m = m.max(1);
    for w in samples.windows(2) {
        if !is_prefix(&w[0], &w[1]) {
            return Err(Error::Precondition(
                "samples must be nested: each sample a prefix of the next".into(),
            ));
        }
    }
    let mut trace = LimitVectorTrace {
        m,
        sizes: samples.iter().map(|s| s.len()).collect(),
        samples: samples.to_vec(),
        f_vectors: Vec::new(),
        top_singular_values: Vec::new(),
        overlap_sequence: Vec::new(),
        non_unique: Vec::new(),
        reference,
        reference_alignment: Vec::new(),
        warnings: Vec::new(),
    };
    let mut previous: Option<DMatrix<Complex64>> = None;
    for sample in samples {
        let n = sample.len();
        if n < m {
            return Err(Error::InvalidArgument(format!(
                "sample of {n} points cannot carry {m} Schmidt vectors"
            )));
        }
        let fm = FiniteMultiplier::new(kernel, phi, sample)?;
        let svd = fm.svd()?;
        let s = &svd.values;
        let gap = if n > m { s[m - 1] - s[m] } else { f64::INFINITY };
        let degenerate = gap < GAP_TOL * s[0].max(1.0);
        if degenerate {
            trace.warnings.push(format!(
                "n = {n}: non-unique maximiser (singular value gap {gap:.3e})"
            ));
        }
        trace.non_unique.push(degenerate);
        trace.top_singular_values.push(s.iter().take(m + 1).copied().collect());

        let mut top = svd.left.columns(0, m).into_owned();
        for mut col in top.column_iter_mut() {
            let mut v = col.clone_owned();
            phase_fix(&mut v);
            col.copy_from(&v);
        }
        let f = top.column(0).into_owned();
        if let Some(alpha) = reference {
            trace
                .reference_alignment
                .push(alignment_with_point(kernel, sample, &fm.gram, &f, alpha)?);
        }
        if let Some(prev) = previous.take() {
            let mut ext = DMatrix::<Complex64>::zeros(n, m);
            ext.view_mut((0, 0), (prev.nrows(), m)).copy_from(&prev);
            let a = frame_basis(fm.root(), &ext);
            let b = frame_basis(fm.root(), &top);
            let cross = a.adjoint() * b;
            let overlap = cross.singular_values().iter().fold(f64::INFINITY, |x, &y| x.min(y));
            trace.overlap_sequence.push(overlap.min(1.0));
        }
        trace.f_vectors.push(to_vec(&f));
        previous = Some(top);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn identity_fm(psi: &[f64]) -> FiniteMultiplier {
        let n = psi.len();
        FiniteMultiplier::from_parts(
            HermitianMatrix::from_matrix(DMatrix::identity(n, n)),
            psi.iter().map(|&x| c(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_s_numbers() {
        let fm = identity_fm(&[3.0, 2.0, 1.0]);
        assert!((finite_sm(&fm, 1).unwrap() - 2.0).abs() < 1e-14);
        assert!(finite_sm(&fm, 3).is_err());
        let harmonic: Vec<f64> = (1..=10).map(|n| 1.0 / n as f64).collect();
        let fm = identity_fm(&harmonic);
        assert!((finite_sm(&fm, 2).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn split_two_by_two() {
        let fm = identity_fm(&[2.0, 0.5]);
        let split = schmidt_split(&fm, 1, 1.0).unwrap();
        assert_eq!(split.u_vectors.len(), 1);
        let u = &split.u_vectors[0];
        assert!((u[0] - c(3f64.sqrt())).norm() < 1e-12 && u[1].norm() < 1e-12);
        let b = split.b.matrix();
        assert!((b[(0, 0)] - c(1.0)).norm() < 1e-12);
        assert!((b[(1, 1)] - c(0.25)).norm() < 1e-12);
        assert!(b[(0, 1)].norm() < 1e-12);
        assert!(split.residual < 1e-12);
    }

    #[test]
    fn split_harmonic_thresholds() {
        let harmonic: Vec<f64> = (1..=5).map(|n| 1.0 / n as f64).collect();
        let fm = identity_fm(&harmonic);
        assert!(schmidt_split(&fm, 1, 1.0).unwrap().u_vectors.is_empty());
        let split = schmidt_split(&fm, 1, 0.6).unwrap();
        assert_eq!(split.u_vectors.len(), 1);
        assert!(split.u_vectors[0][1..].iter().all(|z| z.norm() < 1e-12));
        assert!(schmidt_split(&fm, 0, 0.6).is_err());
    }
}
