use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DomainPoint;
use crate::error::{Error, Result};

/// The parameter sets the zoo kernels live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    UnitDisc,
    /// The disc `|λ - 1/2| < 1/2`.
    OffCenterDisc,
    WholePlane,
    /// The closed interval `[0, 1]` on the real line.
    UnitInterval,
    PositiveIntegers,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::UnitDisc => "unit_disc",
            DomainKind::OffCenterDisc => "off_center_disc",
            DomainKind::WholePlane => "whole_plane",
            DomainKind::UnitInterval => "unit_interval",
            DomainKind::PositiveIntegers => "positive_integers",
        }
    }

    /// Center and radius for the two disc domains.
    pub fn disc(self) -> Option<(Complex64, f64)> {
        match self {
            DomainKind::UnitDisc => Some((Complex64::new(0.0, 0.0), 1.0)),
            DomainKind::OffCenterDisc => Some((Complex64::new(0.5, 0.0), 0.5)),
            _ => None,
        }
    }

    /// Open subsets of the plane on which the zoo kernels are analytic in `λ`.
    pub fn is_planar(self) -> bool {
        matches!(
            self,
            DomainKind::UnitDisc | DomainKind::OffCenterDisc | DomainKind::WholePlane
        )
    }

    pub fn contains(self, z: Complex64) -> bool {
        if !z.re.is_finite() || !z.im.is_finite() {
            return false;
        }
        match self {
            DomainKind::UnitDisc | DomainKind::OffCenterDisc => {
                let (center, radius) = self.disc().expect("disc domain");
                (z - center).norm() < radius
            }
            DomainKind::WholePlane => true,
            DomainKind::UnitInterval => z.im == 0.0 && (0.0..=1.0).contains(&z.re),
            DomainKind::PositiveIntegers => z.im == 0.0 && z.re >= 1.0 && z.re.fract() == 0.0,
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `1/(1 - λ μ̄)` on the unit disc.
    Szego,
    /// The Szegő formula restricted to `|λ - 1/2| < 1/2`.
    SzegoOffCenter,
    /// `1/(1 - λ μ̄)^2` on the unit disc.
    Bergman,
    /// `exp(λ μ̄)` on the plane.
    Fock,
    /// Kernel of `{f ∈ L²(0,1) : f' ∈ L²(0,1)}` with `<f,g> = ∫ f ḡ + f' ḡ'`.
    Sobolev,
    /// Kronecker delta on the positive integers.
    L2,
    /// `δ_{λμ} - 3/2^{λ+μ}`: the kernel of the orthogonal complement of
    /// `u = √3 (2^{-n})` in `ℓ²`.
    L2Projected,
    /// `1/(1 - (λ μ̄)^m)`: closure of the polynomials in `λ^m` inside `H²`.
    Powers(u32),
    /// `λμ̄/(1 - λμ̄) + g(λ) ḡ(μ)` with `g(z) = 1/(z - 1)`, the kernel of
    /// `z H² ⊕ C g`.
    Anomaly,
}

/// A Hermitian positive kernel from the zoo together with its domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    kind: KernelKind,
}

const BASE_IDS: [&str; 9] = [
    "szego",
    "szego_offcenter",
    "bergman",
    "fock",
    "sobolev",
    "l2",
    "l2_projected",
    "powers:2",
    "anomaly",
];

impl Kernel {
    pub fn new(kind: KernelKind) -> Self {
        Kernel { kind }
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Looks a kernel up by its string id. `powers:<m>` takes the power as a
    /// parameter.
    pub fn from_id(id: &str) -> Result<Kernel> {
        let kind = match id {
            "szego" => KernelKind::Szego,
            "szego_offcenter" => KernelKind::SzegoOffCenter,
            "bergman" => KernelKind::Bergman,
            "fock" => KernelKind::Fock,
            "sobolev" => KernelKind::Sobolev,
            "l2" => KernelKind::L2,
            "l2_projected" => KernelKind::L2Projected,
            "anomaly" => KernelKind::Anomaly,
            other => match other.strip_prefix("powers:").map(str::parse::<u32>) {
                Some(Ok(m)) if m >= 1 => KernelKind::Powers(m),
                _ => {
                    return Err(Error::UnknownId {
                        kind: "kernel",
                        id: id.to_string(),
                        valid: Kernel::ids(),
                    })
                }
            },
        };
        Ok(Kernel { kind })
    }

    pub fn ids() -> Vec<String> {
        BASE_IDS.iter().map(|s| s.to_string()).collect()
    }

    /// Every kernel of the zoo, in id order of [`Kernel::ids`].
    pub fn catalog() -> Vec<Kernel> {
        BASE_IDS
            .iter()
            .map(|id| Kernel::from_id(id).expect("catalog ids parse"))
            .collect()
    }

    pub fn id(&self) -> String {
        match self.kind {
            KernelKind::Szego => "szego".into(),
            KernelKind::SzegoOffCenter => "szego_offcenter".into(),
            KernelKind::Bergman => "bergman".into(),
            KernelKind::Fock => "fock".into(),
            KernelKind::Sobolev => "sobolev".into(),
            KernelKind::L2 => "l2".into(),
            KernelKind::L2Projected => "l2_projected".into(),
            KernelKind::Powers(m) => format!("powers:{m}"),
            KernelKind::Anomaly => "anomaly".into(),
        }
    }

    pub fn description(&self) -> String {
        match self.kind {
            KernelKind::Szego => "Szegő kernel 1/(1 - λμ̄) of the Hardy space on the unit disc".into(),
            KernelKind::SzegoOffCenter => {
                "Szegő kernel 1/(1 - λμ̄) restricted to the disc |λ - 1/2| < 1/2".into()
            }
            KernelKind::Bergman => "Bergman kernel 1/(1 - λμ̄)^2 on the unit disc".into(),
            KernelKind::Fock => "Fock (Bargmann) kernel exp(λμ̄) on the complex plane".into(),
            KernelKind::Sobolev => {
                "Sobolev kernel cosh(min(s,t)) cosh(1 - max(s,t)) / sinh(1) on [0, 1]".into()
            }
            KernelKind::L2 => "Kronecker delta: l2 as a space of functions on N".into(),
            KernelKind::L2Projected => {
                "δ_{λμ} - 3/2^{λ+μ}: orthogonal complement of √3(2^-n) in l2".into()
            }
            KernelKind::Powers(m) => format!(
                "1/(1 - (λμ̄)^{m}): closure of polynomials in λ^{m} in the Hardy space"
            ),
            KernelKind::Anomaly => {
                "λμ̄/(1 - λμ̄) + g(λ)conj(g(μ)), g(z) = 1/(z - 1): the space zH² ⊕ Cg".into()
            }
        }
    }

    pub fn domain_kind(&self) -> DomainKind {
        match self.kind {
            KernelKind::Szego | KernelKind::Bergman | KernelKind::Powers(_) | KernelKind::Anomaly => {
                DomainKind::UnitDisc
            }
            KernelKind::SzegoOffCenter => DomainKind::OffCenterDisc,
            KernelKind::Fock => DomainKind::WholePlane,
            KernelKind::Sobolev => DomainKind::UnitInterval,
            KernelKind::L2 | KernelKind::L2Projected => DomainKind::PositiveIntegers,
        }
    }

    pub fn contains(&self, p: DomainPoint) -> bool {
        self.domain_kind().contains(p.value())
    }

    pub fn check(&self, p: DomainPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                kernel: self.id(),
                point: p,
            })
        }
    }

    /// `k(λ, μ)`. Callers are responsible for the domain check; see
    /// [`Kernel::try_eval`].
    pub fn eval(&self, lambda: DomainPoint, mu: DomainPoint) -> Complex64 {
        let l = lambda.value();
        let m = mu.value();
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            KernelKind::Szego | KernelKind::SzegoOffCenter => one / (one - l * m.conj()),
            KernelKind::Bergman => {
                let d = one - l * m.conj();
                one / (d * d)
            }
            KernelKind::Fock => (l * m.conj()).exp(),
            KernelKind::Sobolev => {
                let (s, t) = (l.re, m.re);
                let lo = s.min(t);
                let hi = s.max(t);
                Complex64::new(lo.cosh() * (1.0 - hi).cosh() / 1f64.sinh(), 0.0)
            }
            KernelKind::L2 => {
                if l == m {
                    one
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            KernelKind::L2Projected => {
                let delta = if l == m { 1.0 } else { 0.0 };
                let exponent = (l.re + m.re) as i32;
                Complex64::new(delta - 3.0 * 0.5f64.powi(exponent), 0.0)
            }
            KernelKind::Powers(p) => one / (one - (l * m.conj()).powu(p)),
            KernelKind::Anomaly => {
                let x = l * m.conj();
                x / (one - x) + one / ((l - one) * (m.conj() - one))
            }
        }
    }

    pub fn try_eval(&self, lambda: DomainPoint, mu: DomainPoint) -> Result<Complex64> {
        self.check(lambda)?;
        self.check(mu)?;
        Ok(self.eval(lambda, mu))
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}
