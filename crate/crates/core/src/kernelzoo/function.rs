use std::fmt;

use num_complex::Complex64;

use super::DomainPoint;
use crate::error::{Error, Result};

/// Distance below which a point is identified with an undefined point.
const UNDEFINED_RADIUS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FunctionKind {
    Constant(Complex64),
    /// `λ ↦ λ`.
    Identity,
    /// `λ^{-k}`, undefined at 0.
    InversePower(u32),
    /// `λ^{-k}` away from 0 with an assigned value at 0.
    InversePowerWithValue(u32, Complex64),
    /// Characteristic function of the point 0.
    CharZero,
    /// `1/(λ - a)`, undefined at `a`.
    InverseShift(Complex64),
    /// `λ/(λ - a)`, undefined at `a`.
    PoleRatio(Complex64),
    /// `n ↦ 1/n` on the positive integers.
    Harmonic,
    /// `n ↦ (-1)^n/2 + 1`, undefined at `n = 1`.
    Alternating,
    /// `t ↦ √t` on `[0, 1]`.
    Sqrt,
}

/// A partial function `φ : D_φ → C` with an explicit list of points where it
/// is undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateFunction {
    id: String,
    kind: FunctionKind,
    undefined: Vec<DomainPoint>,
}

const NAMED_IDS: [&str; 11] = [
    "zero",
    "one",
    "z",
    "inv_z",
    "inv_z2",
    "inv_z2_c5",
    "char0",
    "harmonic",
    "alternating",
    "sqrt",
    "pole_ratio:0.3",
];

const PARAMETRIC_IDS: [&str; 5] = [
    "const:<re>[:<im>]",
    "inv_pow:<k>",
    "inv_pow_at0:<k>:<re>[:<im>]",
    "inv_shift:<re>[:<im>]",
    "pole_ratio:<re>[:<im>]",
];

fn parse_complex(parts: &[&str]) -> Option<Complex64> {
    match parts {
        [re] => re.parse().ok().map(|re| Complex64::new(re, 0.0)),
        [re, im] => Some(Complex64::new(re.parse().ok()?, im.parse().ok()?)),
        _ => None,
    }
}

impl CandidateFunction {
    pub fn new(id: impl Into<String>, kind: FunctionKind) -> Self {
        let zero = DomainPoint::new(0.0, 0.0);
        let undefined = match kind {
            FunctionKind::InversePower(_) => vec![zero],
            FunctionKind::InverseShift(a) | FunctionKind::PoleRatio(a) => vec![DomainPoint::from(a)],
            FunctionKind::Alternating => vec![DomainPoint::new(1.0, 0.0)],
            _ => Vec::new(),
        };
        CandidateFunction {
            id: id.into(),
            kind,
            undefined,
        }
    }

    /// Parses a named or parametric function id, e.g. `inv_z`, `const:0.9`,
    /// `inv_shift:0.5`, `inv_pow_at0:2:5`.
    pub fn from_id(id: &str) -> Result<CandidateFunction> {
        let named = match id {
            "zero" => Some(FunctionKind::Constant(Complex64::new(0.0, 0.0))),
            "one" => Some(FunctionKind::Constant(Complex64::new(1.0, 0.0))),
            "z" => Some(FunctionKind::Identity),
            "inv_z" => Some(FunctionKind::InversePower(1)),
            "inv_z2" => Some(FunctionKind::InversePower(2)),
            "inv_z2_c5" => Some(FunctionKind::InversePowerWithValue(2, Complex64::new(5.0, 0.0))),
            "char0" => Some(FunctionKind::CharZero),
            "harmonic" => Some(FunctionKind::Harmonic),
            "alternating" => Some(FunctionKind::Alternating),
            "sqrt" => Some(FunctionKind::Sqrt),
            _ => None,
        };
        if let Some(kind) = named {
            return Ok(CandidateFunction::new(id, kind));
        }
        let parts: Vec<&str> = id.split(':').collect();
        let kind = match parts.as_slice() {
            ["const", rest @ ..] => parse_complex(rest).map(FunctionKind::Constant),
            ["inv_pow", k] => k
                .parse::<u32>()
                .ok()
                .filter(|&k| k >= 1)
                .map(FunctionKind::InversePower),
            ["inv_pow_at0", k, rest @ ..] => match (k.parse::<u32>().ok(), parse_complex(rest)) {
                (Some(k), Some(c)) if k >= 1 => Some(FunctionKind::InversePowerWithValue(k, c)),
                _ => None,
            },
            ["inv_shift", rest @ ..] => parse_complex(rest).map(FunctionKind::InverseShift),
            ["pole_ratio", rest @ ..] => parse_complex(rest).map(FunctionKind::PoleRatio),
            _ => None,
        };
        match kind {
            Some(kind) => Ok(CandidateFunction::new(id, kind)),
            None => Err(Error::UnknownId {
                kind: "function",
                id: id.to_string(),
                valid: CandidateFunction::ids(),
            }),
        }
    }

    pub fn ids() -> Vec<String> {
        NAMED_IDS
            .iter()
            .chain(PARAMETRIC_IDS.iter())
            .map(|s| s.to_string())
            .collect()
    }

    /// Named functions only; parametric families are listed by [`CandidateFunction::ids`].
    pub fn catalog() -> Vec<CandidateFunction> {
        NAMED_IDS
            .iter()
            .map(|id| CandidateFunction::from_id(id).expect("named ids parse"))
            .collect()
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn undefined_points(&self) -> &[DomainPoint] {
        &self.undefined
    }

    pub fn is_defined_at(&self, p: DomainPoint) -> bool {
        self.undefined
            .iter()
            .all(|u| (u.value() - p.value()).norm() > UNDEFINED_RADIUS)
    }

    pub fn description(&self) -> String {
        match self.kind {
            FunctionKind::Constant(c) => format!("constant {}", DomainPoint::from(c)),
            FunctionKind::Identity => "λ".into(),
            FunctionKind::InversePower(k) => format!("λ^-{k}, undefined at 0"),
            FunctionKind::InversePowerWithValue(k, c) => {
                format!("λ^-{k} for λ ≠ 0, value {} at 0", DomainPoint::from(c))
            }
            FunctionKind::CharZero => "characteristic function of the point 0".into(),
            FunctionKind::InverseShift(a) => {
                format!("1/(λ - a), a = {}, undefined at a", DomainPoint::from(a))
            }
            FunctionKind::PoleRatio(a) => {
                format!("λ/(λ - a), a = {}, undefined at a", DomainPoint::from(a))
            }
            FunctionKind::Harmonic => "n ↦ 1/n".into(),
            FunctionKind::Alternating => "n ↦ (-1)^n/2 + 1 on N \\ {1}".into(),
            FunctionKind::Sqrt => "t ↦ √t".into(),
        }
    }

    /// `φ(λ)`; an error if `λ` is one of the undefined points.
    pub fn eval(&self, p: DomainPoint) -> Result<Complex64> {
        if !self.is_defined_at(p) {
            return Err(Error::Undefined {
                function: self.id.clone(),
                point: p,
            });
        }
        let z = p.value();
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.kind {
            FunctionKind::Constant(c) => c,
            FunctionKind::Identity => z,
            FunctionKind::InversePower(k) => one / z.powu(k),
            FunctionKind::InversePowerWithValue(k, c) => {
                if z == Complex64::new(0.0, 0.0) {
                    c
                } else {
                    one / z.powu(k)
                }
            }
            FunctionKind::CharZero => {
                if z == Complex64::new(0.0, 0.0) {
                    one
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            FunctionKind::InverseShift(a) => one / (z - a),
            FunctionKind::PoleRatio(a) => z / (z - a),
            FunctionKind::Harmonic => Complex64::new(1.0 / z.re, 0.0),
            FunctionKind::Alternating => {
                let sign = if (z.re as i64) % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign / 2.0 + 1.0, 0.0)
            }
            FunctionKind::Sqrt => Complex64::new(z.re.max(0.0).sqrt(), 0.0),
        })
    }

    pub fn eval_all(&self, points: &[DomainPoint]) -> Result<Vec<Complex64>> {
        points.iter().map(|&p| self.eval(p)).collect()
    }
}

impl fmt::Display for CandidateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}
