use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CandidateFunction, DomainKind, DomainPoint, Kernel, SampleSet};
use crate::error::{Error, Result};

/// Largest relative radius used by disc samplers.
pub const DISC_RADIUS_CAP: f64 = 0.995;
pub const DEFAULT_MIN_SEPARATION: f64 = 1e-6;
const DEFAULT_PLANE_RADIUS: f64 = 3.0;
const DEFAULT_INTEGER_EXTENT: f64 = 1000.0;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// How candidate points are generated. Every scheme emits its points in a
/// coarse-to-fine order, so prefixes of a large sample are well spread and
/// nested samples are simply prefixes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Scheme {
    /// Concentric rings of equally spaced points, ring `k` of `rings` at
    /// radius `max_r * k / rings`. Radii are relative to the disc radius on
    /// disc domains and absolute on the plane.
    RadialGrid {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rings: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_r: Option<f64>,
    },
    /// Seeded uniform draws: a disc of relative radius `extent`, the box
    /// `[-extent, extent]²` on the plane, `[0, 1]`, or `1..=extent` on the integers.
    UniformRandom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        extent: Option<f64>,
        seed: u64,
    },
    /// `start, start + 1, ...` on the positive integers.
    IntegerRange {
        #[serde(default = "default_start")]
        start: u64,
    },
    /// `(j/n)^grading` for `j = 0..n` on `[0, 1]`.
    IntervalGrid {
        #[serde(default = "default_grading")]
        grading: f64,
    },
    /// A base sample followed by rings that shrink geometrically onto a focus
    /// point (radius `r0 * ratio^level`, `per_level` points per ring). With
    /// explicit `angles` every ring uses exactly those directions, which keeps
    /// rungs inside the domain when the focus is a boundary point.
    Ladder {
        base: Box<Scheme>,
        base_size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        focus: Option<[f64; 2]>,
        r0: f64,
        ratio: f64,
        #[serde(default = "default_per_level")]
        per_level: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        angles: Vec<f64>,
    },
    /// Sunflower spiral on the plane: point `k` at radius `spacing * √k`.
    Spiral { spacing: f64 },
}

fn default_start() -> u64 {
    1
}

fn default_per_level() -> usize {
    1
}

fn default_grading() -> f64 {
    1.0
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::RadialGrid { .. } => "radial_grid",
            Scheme::UniformRandom { .. } => "uniform_random",
            Scheme::IntegerRange { .. } => "integer_range",
            Scheme::IntervalGrid { .. } => "interval_grid",
            Scheme::Ladder { .. } => "ladder",
            Scheme::Spiral { .. } => "spiral",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Scheme::UniformRandom { seed, .. } => Some(*seed),
            Scheme::Ladder { base, .. } => base.seed(),
            _ => None,
        }
    }

    /// A scheme that suits the domain when nothing else is requested.
    pub fn default_for(domain: DomainKind) -> Scheme {
        match domain {
            DomainKind::PositiveIntegers => Scheme::IntegerRange { start: 1 },
            DomainKind::UnitInterval => Scheme::IntervalGrid { grading: 1.0 },
            _ => Scheme::RadialGrid {
                rings: None,
                max_r: None,
            },
        }
    }

    fn incompatible(&self, domain: DomainKind) -> Error {
        Error::IncompatibleScheme {
            scheme: self.name().into(),
            domain: domain.name().into(),
        }
    }

    fn check_domain(&self, domain: DomainKind) -> Result<()> {
        let ok = match self {
            Scheme::RadialGrid { .. } => domain.is_planar(),
            Scheme::UniformRandom { .. } => true,
            Scheme::IntegerRange { .. } => domain == DomainKind::PositiveIntegers,
            Scheme::IntervalGrid { .. } => domain == DomainKind::UnitInterval,
            Scheme::Ladder { base, .. } => {
                domain != DomainKind::PositiveIntegers && base.check_domain(domain).is_ok()
            }
            Scheme::Spiral { .. } => domain == DomainKind::WholePlane,
        };
        if ok {
            Ok(())
        } else {
            Err(self.incompatible(domain))
        }
    }

    /// Candidate points in emission order. Finite for grids, unbounded for
    /// random draws.
    fn candidates(
        &self,
        domain: DomainKind,
        size: usize,
        default_focus: Option<Complex64>,
    ) -> Result<Box<dyn Iterator<Item = Complex64>>> {
        self.check_domain(domain)?;
        Ok(match self {
            Scheme::RadialGrid { rings, max_r } => {
                Box::new(radial_grid(domain, size, *rings, *max_r)?.into_iter())
            }
            Scheme::UniformRandom { extent, seed } => Box::new(random_stream(domain, *extent, *seed)),
            Scheme::IntegerRange { start } => {
                let start = (*start).max(1);
                Box::new((0..size as u64).map(move |j| Complex64::new((start + j) as f64, 0.0)))
            }
            Scheme::IntervalGrid { grading } => {
                if !(*grading > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "interval grading must be positive, got {grading}"
                    )));
                }
                let n = size.max(1);
                let mut idx: Vec<usize> = (0..n).collect();
                idx.sort_by(|a, b| radical_inverse(*a).total_cmp(&radical_inverse(*b)));
                let g = *grading;
                Box::new(
                    idx.into_iter()
                        .map(move |j| Complex64::new((j as f64 / n as f64).powf(g), 0.0)),
                )
            }
            Scheme::Ladder {
                base,
                base_size,
                focus,
                r0,
                ratio,
                per_level,
                angles,
            } => {
                let per_level = if angles.is_empty() { *per_level } else { angles.len() };
                if !(*ratio > 0.0 && *ratio < 1.0) || !(*r0 > 0.0) || per_level == 0 {
                    return Err(Error::InvalidArgument(
                        "ladder needs r0 > 0, 0 < ratio < 1 and per_level ≥ 1".into(),
                    ));
                }
                let focus = focus
                    .map(|[re, im]| Complex64::new(re, im))
                    .or(default_focus)
                    .unwrap_or_else(|| domain_center(domain));
                let base_points = base.candidates(domain, *base_size, default_focus)?.take(*base_size);
                let scale = domain.disc().map_or(1.0, |(_, r)| r);
                let (r0, ratio) = (*r0 * scale, *ratio);
                let angles = angles.clone();
                let levels = (0..).map_while(move |level: i32| {
                    let r = r0 * ratio.powi(level);
                    (r > 1e-300).then_some((level, r))
                });
                let rungs = levels.flat_map(move |(level, r)| {
                    let angles = angles.clone();
                    (0..per_level).map(move |i| {
                        if let Some(&theta) = angles.get(i) {
                            focus + Complex64::from_polar(r, theta)
                        } else if domain == DomainKind::UnitInterval {
                            focus + Complex64::new(r * (i + 1) as f64 / per_level as f64, 0.0)
                        } else {
                            let theta = 2.0 * PI * i as f64 / per_level as f64
                                + 0.7 * level as f64
                                + 0.4;
                            focus + Complex64::from_polar(r, theta)
                        }
                    })
                });
                Box::new(base_points.chain(rungs))
            }
            Scheme::Spiral { spacing } => {
                let spacing = *spacing;
                Box::new((1..).map(move |k: u64| {
                    Complex64::from_polar(spacing * (k as f64).sqrt(), GOLDEN_ANGLE * k as f64)
                }))
            }
        })
    }

    /// Whether the candidate stream is unbounded (so shortfalls come from
    /// rejection rather than exhaustion).
    fn is_stream(&self) -> bool {
        matches!(
            self,
            Scheme::UniformRandom { .. } | Scheme::Spiral { .. } | Scheme::Ladder { .. }
        )
    }
}

fn domain_center(domain: DomainKind) -> Complex64 {
    match domain {
        DomainKind::UnitDisc | DomainKind::OffCenterDisc => domain.disc().expect("disc").0,
        DomainKind::PositiveIntegers => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// Base-2 radical inverse (van der Corput) of `k`.
fn radical_inverse(mut k: usize) -> f64 {
    let mut value = 0.0;
    let mut digit = 0.5;
    while k > 0 {
        if k & 1 == 1 {
            value += digit;
        }
        digit *= 0.5;
        k >>= 1;
    }
    value
}

fn radial_grid(
    domain: DomainKind,
    size: usize,
    rings: Option<usize>,
    max_r: Option<f64>,
) -> Result<Vec<Complex64>> {
    let (center, scale, cap) = match domain.disc() {
        Some((c, r)) => (c, r, DISC_RADIUS_CAP),
        None => (Complex64::new(0.0, 0.0), 1.0, f64::INFINITY),
    };
    let default_r = if domain.disc().is_some() {
        DISC_RADIUS_CAP
    } else {
        DEFAULT_PLANE_RADIUS
    };
    let max_r = max_r.unwrap_or(default_r).min(cap);
    if !(max_r > 0.0) {
        return Err(Error::InvalidArgument(format!("max_r must be positive, got {max_r}")));
    }
    let rings = rings
        .unwrap_or_else(|| ((size as f64 / 2.0).sqrt().round() as usize).max(1))
        .clamp(1, size.max(1));
    let per = size / rings;
    let extra = size % rings;
    // (coarse-to-fine key, ring, point)
    let mut keyed = Vec::with_capacity(size);
    for k in 1..=rings {
        let count = per + usize::from(k > rings - extra);
        let radius = max_r * k as f64 / rings as f64;
        let offset = 0.37 * k as f64;
        for j in 0..count {
            let theta = 2.0 * PI * j as f64 / count as f64 + offset;
            let z = center + Complex64::from_polar(scale * radius, theta);
            keyed.push((radical_inverse(j), rings - k, z));
        }
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, _, z)| z).collect())
}

fn random_stream(domain: DomainKind, extent: Option<f64>, seed: u64) -> impl Iterator<Item = Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::from_fn(move || {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        Some(match domain {
            DomainKind::UnitDisc | DomainKind::OffCenterDisc => {
                let (center, radius) = domain.disc().expect("disc");
                let e = extent.unwrap_or(DISC_RADIUS_CAP).min(DISC_RADIUS_CAP);
                center + Complex64::from_polar(radius * e * u.sqrt(), 2.0 * PI * v)
            }
            DomainKind::WholePlane => {
                let e = extent.unwrap_or(DEFAULT_PLANE_RADIUS);
                Complex64::new(e * (2.0 * u - 1.0), e * (2.0 * v - 1.0))
            }
            DomainKind::UnitInterval => Complex64::new(u, 0.0),
            DomainKind::PositiveIntegers => {
                let e = extent.unwrap_or(DEFAULT_INTEGER_EXTENT).max(1.0);
                Complex64::new(1.0 + (u * e).floor().min(e - 1.0), 0.0)
            }
        })
    })
}

/// A sampling recipe: a scheme plus the separation rule and any points that
/// must come first (for instance a point where a check is anchored).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sampler {
    #[serde(flatten)]
    pub scheme: Scheme,
    #[serde(default = "default_min_separation")]
    pub min_separation: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_points: Vec<DomainPoint>,
}

fn default_min_separation() -> f64 {
    DEFAULT_MIN_SEPARATION
}

impl Sampler {
    pub fn new(scheme: Scheme) -> Self {
        Sampler {
            scheme,
            min_separation: DEFAULT_MIN_SEPARATION,
            extra_points: Vec::new(),
        }
    }

    pub fn with_extra_points(mut self, points: impl IntoIterator<Item = DomainPoint>) -> Self {
        self.extra_points.extend(points);
        self
    }

    pub fn with_min_separation(mut self, min_separation: f64) -> Self {
        self.min_separation = min_separation;
        self
    }
}

/// Draws `size` points for `kernel`. Points inside `exclude`'s undefined set
/// (to within the separation) are dropped, which can leave the sample short
/// by at most that many points; any other shortfall is an error.
pub fn sample_domain(
    kernel: &Kernel,
    sampler: &Sampler,
    size: usize,
    exclude: Option<&CandidateFunction>,
) -> Result<SampleSet> {
    if size == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    if !(sampler.min_separation >= 0.0) {
        return Err(Error::InvalidArgument("min_separation must be non-negative".into()));
    }
    let domain = kernel.domain_kind();
    let undefined: Vec<Complex64> = exclude
        .map(|f| f.undefined_points().iter().map(|p| p.value()).collect())
        .unwrap_or_default();
    let focus = undefined.first().copied();
    let sep = sampler.min_separation;
    let scheme_points = sampler.scheme.candidates(domain, size, focus)?;
    let mut stream = sampler
        .extra_points
        .iter()
        .map(|p| p.value())
        .chain(scheme_points);

    let mut accepted: Vec<Complex64> = Vec::with_capacity(size);
    let mut dropped_undefined = 0usize;
    let mut attempts = 0usize;
    let attempt_cap = if sampler.scheme.is_stream() {
        1000 * size + 1000
    } else {
        usize::MAX
    };
    while accepted.len() + dropped_undefined < size && attempts < attempt_cap {
        let Some(z) = stream.next() else { break };
        attempts += 1;
        if !domain.contains(z) {
            continue;
        }
        if undefined.iter().any(|u| (u - z).norm() <= sep.max(1e-12)) {
            if !sampler.scheme.is_stream() {
                dropped_undefined += 1;
            }
            continue;
        }
        if accepted.iter().any(|a| (a - z).norm() < sep.max(f64::MIN_POSITIVE)) {
            continue;
        }
        accepted.push(z);
    }
    if accepted.len() + dropped_undefined < size {
        return Err(Error::Separation {
            requested: size,
            placed: accepted.len(),
            min_separation: sep,
        });
    }
    Ok(SampleSet {
        points: accepted.into_iter().map(DomainPoint::from).collect(),
        min_separation: sep,
        seed: sampler.scheme.seed(),
    })
}

/// Nested samples: sample `i` is the first `sizes[i]` points of the largest
/// sample, so each sample extends the previous one.
pub fn nested_samples(
    kernel: &Kernel,
    sampler: &Sampler,
    sizes: &[usize],
    exclude: Option<&CandidateFunction>,
) -> Result<Vec<SampleSet>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("at least one sample size is required".into()));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("sample sizes must be ascending".into()));
    }
    let largest = sample_domain(kernel, sampler, *sizes.last().expect("non-empty"), exclude)?;
    Ok(sizes
        .iter()
        .map(|&n| largest.prefix(n.min(largest.len())))
        .collect())
}
