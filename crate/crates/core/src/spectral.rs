//! Hermitian eigensolves, inertia counts and singular values in a Gram-weighted
//! inner product.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Relative eigenvalue floor below which a Gram matrix is treated as singular
/// when a positive-definite inner product is required.
pub const PD_REL_TOL: f64 = 1e-13;
pub const RESIDUAL_LIMIT: f64 = 1e-10;
const ABS_FLOOR: f64 = 1e-300;
const MAX_SWEEPS: usize = 10_000;

/// A square complex matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Averages `m` with its conjugate transpose. Panics if `m` is not square.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "Hermitian matrix must be square");
        let adj = m.adjoint();
        let mut m = (m + adj) * Complex64::new(0.5, 0.0);
        for i in 0..m.nrows() {
            m[(i, i)].im = 0.0;
        }
        HermitianMatrix { m }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let v = DVector::from_iterator(d.len(), d.iter().map(|&x| Complex64::new(x, 0.0)));
        HermitianMatrix {
            m: DMatrix::from_diagonal(&v),
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        HermitianMatrix::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    /// Largest absolute row sum, a cheap bound on the spectral norm.
    pub fn norm_inf(&self) -> f64 {
        self.m
            .row_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl Serialize for HermitianMatrix {
    /// Rows of `[re, im]` pairs.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .m
            .row_iter()
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

/// Full eigendecomposition with a residual check on every pair.
pub fn hermitian_eigs(m: &HermitianMatrix) -> Result<Eigen> {
    let n = m.dim();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(m.m.clone(), f64::EPSILON, MAX_SWEEPS)
        .ok_or(Error::NoConvergence {
            iterations: MAX_SWEEPS,
        })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

    let scale = m.norm_inf().max(ABS_FLOOR);
    let limit = RESIDUAL_LIMIT * scale;
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let r = &m.m * v - v * Complex64::new(lambda, 0.0);
        let residual = r.norm();
        if residual > limit {
            return Err(Error::Residual {
                index: k,
                residual,
                limit,
            });
        }
    }
    Ok(Eigen { values, vectors })
}

/// Ascending eigenvalues only.
pub fn eigenvalues(m: &HermitianMatrix) -> Result<Vec<f64>> {
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = m.m.clone().symmetric_eigenvalues().iter().copied().collect();
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
        });
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Signature of a Hermitian matrix under a relative zero tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inertia {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
    /// Relative tolerance the count was made with.
    pub tolerance_used: f64,
    /// Absolute threshold `tolerance_used * spectral radius`.
    pub threshold: f64,
}

impl Inertia {
    pub fn n(&self) -> usize {
        self.n_neg + self.n_zero + self.n_pos
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_neg == 0 && self.n_zero == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) at relative tolerance {:e}",
            self.n_neg, self.n_zero, self.n_pos, self.tolerance_used
        )
    }
}

/// Counts signs of `values`, treating `|λ| ≤ rel_tol · max|λ|` as zero.
pub fn inertia_of_values(values: &[f64], rel_tol: f64) -> Inertia {
    let radius = values.iter().fold(ABS_FLOOR, |acc, x| acc.max(x.abs()));
    let threshold = rel_tol * radius;
    let mut out = Inertia {
        n_neg: 0,
        n_zero: 0,
        n_pos: 0,
        tolerance_used: rel_tol,
        threshold,
    };
    for &x in values {
        if x.abs() <= threshold {
            out.n_zero += 1;
        } else if x < 0.0 {
            out.n_neg += 1;
        } else {
            out.n_pos += 1;
        }
    }
    out
}

pub fn inertia(m: &HermitianMatrix, rel_tol: f64) -> Result<Inertia> {
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }
    Ok(inertia_of_values(&eigenvalues(m)?, rel_tol))
}

/// The Hermitian square root `R = K^{1/2}` of a positive-definite Gram matrix
/// and its inverse, so that `y* K x = (Ry)*(Rx)`.
#[derive(Clone, Debug)]
pub struct CongruenceRoot {
    pub root: DMatrix<Complex64>,
    pub inverse: DMatrix<Complex64>,
    pub inertia: Inertia,
}

impl CongruenceRoot {
    pub fn new(k: &HermitianMatrix, rel_tol: f64) -> Result<CongruenceRoot> {
        let eig = hermitian_eigs(k)?;
        let inertia = inertia_of_values(&eig.values, rel_tol);
        if !inertia.is_positive_definite() {
            return Err(Error::NotPositiveDefinite { inertia });
        }
        let v = &eig.vectors;
        let scaled = |f: &dyn Fn(f64) -> f64| {
            let d = DVector::from_iterator(
                eig.values.len(),
                eig.values.iter().map(|&x| Complex64::new(f(x), 0.0)),
            );
            v * DMatrix::from_diagonal(&d) * v.adjoint()
        };
        Ok(CongruenceRoot {
            root: scaled(&|x| x.sqrt()),
            inverse: scaled(&|x| 1.0 / x.sqrt()),
            inertia,
        })
    }

    /// `R A R⁻¹`: the matrix of `A` in a K-orthonormal frame.
    pub fn conjugate(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        &self.root * a * &self.inverse
    }
}

/// Singular values and vectors of an operator in the K-inner product.
/// Columns of `left`/`right` are coefficient vectors of unit K-norm.
#[derive(Clone, Debug)]
pub struct KSvd {
    pub values: Vec<f64>,
    pub left: DMatrix<Complex64>,
    pub right: DMatrix<Complex64>,
}

pub fn k_svd(a: &DMatrix<Complex64>, k: &HermitianMatrix) -> Result<KSvd> {
    check_shapes(a, k)?;
    let root = CongruenceRoot::new(k, PD_REL_TOL)?;
    let c = root.conjugate(a);
    let n = c.nrows();
    let svd = c.svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u_sorted = DMatrix::from_fn(n, n, |r, col| u[(r, order[col])]);
    let v_sorted = DMatrix::from_fn(n, n, |r, col| v_t[(order[col], r)].conj());
    Ok(KSvd {
        values,
        left: &root.inverse * u_sorted,
        right: &root.inverse * v_sorted,
    })
}

/// Singular values of `a` acting on `⟨x, y⟩ = y* K x`, descending.
pub fn k_singular_values(a: &DMatrix<Complex64>, k: &HermitianMatrix) -> Result<Vec<f64>> {
    check_shapes(a, k)?;
    let root = CongruenceRoot::new(k, PD_REL_TOL)?;
    let mut s: Vec<f64> = root.conjugate(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

fn check_shapes(a: &DMatrix<Complex64>, k: &HermitianMatrix) -> Result<()> {
    if !a.is_square() || a.nrows() != k.dim() {
        return Err(Error::InvalidArgument(format!(
            "operator is {}x{} but the Gram matrix is {}x{}",
            a.nrows(),
            a.ncols(),
            k.dim(),
            k.dim()
        )));
    }
    Ok(())
}

/// `y* K x`.
pub fn k_inner(k: &HermitianMatrix, x: &DVector<Complex64>, y: &DVector<Complex64>) -> Complex64 {
    (y.adjoint() * k.matrix() * x)[(0, 0)]
}

pub fn k_norm(k: &HermitianMatrix, x: &DVector<Complex64>) -> f64 {
    k_inner(k, x, x).re.max(0.0).sqrt()
}
