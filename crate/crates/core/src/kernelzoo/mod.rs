//! Kernels, candidate functions, domain sampling and Gram matrices.

mod function;
mod kernel;
pub mod sampling;

use std::fmt;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use function::{CandidateFunction, FunctionKind};
pub use kernel::{DomainKind, Kernel, KernelKind};
pub use sampling::{nested_samples, sample_domain, Sampler, Scheme};

use crate::error::{Error, Result};
use crate::spectral::{eigenvalues, HermitianMatrix};

/// Condition numbers above this are flagged in every analysis.
pub const CONDITION_WARNING: f64 = 1e12;
const CONDITION_FLOOR: f64 = 1e-300;

/// A point of a kernel's domain, stored as a complex number. Integers and
/// interval points sit on the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainPoint(Complex64);

impl DomainPoint {
    pub fn new(re: f64, im: f64) -> Self {
        DomainPoint(Complex64::new(re, im))
    }

    pub fn real(x: f64) -> Self {
        DomainPoint::new(x, 0.0)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl From<Complex64> for DomainPoint {
    fn from(z: Complex64) -> Self {
        DomainPoint(z)
    }
}

impl fmt::Display for DomainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im == 0.0 {
            write!(f, "{}", z.re)
        } else if z.re == 0.0 {
            write!(f, "{}i", z.im)
        } else if z.im < 0.0 {
            write!(f, "{}-{}i", z.re, -z.im)
        } else {
            write!(f, "{}+{}i", z.re, z.im)
        }
    }
}

impl Serialize for DomainPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DomainPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Real(f64),
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Pair([re, im]) => DomainPoint::new(re, im),
            Repr::Real(re) => DomainPoint::real(re),
        })
    }
}

/// An ordered list of distinct domain points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub points: Vec<DomainPoint>,
    pub min_separation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SampleSet {
    /// Validates pairwise separation. Domain membership is checked against a
    /// kernel by [`SampleSet::validate`].
    pub fn new(points: Vec<DomainPoint>, min_separation: f64) -> Result<SampleSet> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a sample needs at least one point".into()));
        }
        for (i, a) in points.iter().enumerate() {
            for b in &points[..i] {
                let d = (a.value() - b.value()).norm();
                if d == 0.0 || d < min_separation {
                    return Err(Error::Separation {
                        requested: points.len(),
                        placed: i,
                        min_separation,
                    });
                }
            }
        }
        Ok(SampleSet {
            points,
            min_separation,
            seed: None,
        })
    }

    pub fn from_values(values: &[Complex64]) -> Result<SampleSet> {
        SampleSet::new(
            values.iter().copied().map(DomainPoint::from).collect(),
            0.0,
        )
    }

    pub fn from_reals(values: &[f64]) -> Result<SampleSet> {
        SampleSet::new(values.iter().map(|&x| DomainPoint::real(x)).collect(), 0.0)
    }

    /// Reads a JSON array of `[re, im]` pairs.
    pub fn load(path: &Path) -> Result<SampleSet> {
        let text = std::fs::read_to_string(path)?;
        let points: Vec<DomainPoint> = serde_json::from_str(&text)?;
        SampleSet::new(points, 0.0)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value()).collect()
    }

    pub fn prefix(&self, n: usize) -> SampleSet {
        SampleSet {
            points: self.points[..n.min(self.points.len())].to_vec(),
            min_separation: self.min_separation,
            seed: self.seed,
        }
    }

    pub fn position(&self, p: DomainPoint) -> Option<usize> {
        self.points
            .iter()
            .position(|q| (q.value() - p.value()).norm() <= 1e-12)
    }

    /// Checks domain membership for `kernel` and, when given, that no point
    /// is undefined for `phi`.
    pub fn validate(&self, kernel: &Kernel, phi: Option<&CandidateFunction>) -> Result<()> {
        for &p in &self.points {
            kernel.check(p)?;
            if let Some(phi) = phi {
                if !phi.is_defined_at(p) {
                    return Err(Error::Undefined {
                        function: phi.id().to_string(),
                        point: p,
                    });
                }
            }
        }
        Ok(())
    }
}

/// `K[i][j] = k(λᵢ, λⱼ)`, averaged with its conjugate transpose.
pub fn gram(kernel: &Kernel, sample: &SampleSet) -> Result<HermitianMatrix> {
    sample.validate(kernel, None)?;
    let n = sample.len();
    let pts = &sample.points;
    let raw = DMatrix::from_fn(n, n, |i, j| kernel.eval(pts[i], pts[j]));
    Ok(HermitianMatrix::from_matrix(raw))
}

/// `max|λ| / min|λ|` over the spectrum; infinite when the smallest
/// eigenvalue magnitude is below `1e-300`.
pub fn condition_estimate(k: &HermitianMatrix) -> f64 {
    let eigs = match eigenvalues(k) {
        Ok(e) => e,
        Err(_) => return f64::INFINITY,
    };
    let mags = eigs.iter().map(|l| l.abs());
    let (lo, hi) = mags.fold((f64::INFINITY, 0.0f64), |(lo, hi), m| (lo.min(m), hi.max(m)));
    if lo < CONDITION_FLOOR {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Warning text for an ill-conditioned Gram matrix, if any.
pub fn condition_warning(cond: f64) -> Option<String> {
    (cond > CONDITION_WARNING).then(|| {
        format!("Gram matrix condition estimate {cond:.3e} exceeds {CONDITION_WARNING:e}; inertia counts near zero may be tolerance-driven")
    })
}
