//! Functionals on `Z^d` whose sphere and ball averages are studied.

use std::fmt;
use std::str::FromStr;

use num::Integer;

use crate::error::{Error, Result};
use crate::hull::LimitShape;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// `|x|^p`, the word length to the power `p`.
    WordLengthPower(u32),
    /// `||x||_L^p`.
    NormPower(u32),
    /// Euclidean length to the power `p`.
    EuclideanPower(u32),
    /// `Π x_i^{e_i}`.
    CoordinateMonomial(Vec<u32>),
    /// 1 when the coordinates are coprime, else 0. Not homogeneous.
    CoprimeIndicator,
    ConstantOne,
}

impl Functional {
    /// Homogeneity order `k`; 0 for indicators and constants.
    pub fn order(&self) -> u32 {
        match self {
            Self::WordLengthPower(p) | Self::NormPower(p) | Self::EuclideanPower(p) => *p,
            Self::CoordinateMonomial(e) => e.iter().sum(),
            Self::CoprimeIndicator | Self::ConstantOne => 0,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Self::CoprimeIndicator)
    }

    /// Whether sphere and ball averages can be computed exactly.
    pub fn is_rational_valued(&self) -> bool {
        !matches!(self, Self::EuclideanPower(p) if p % 2 == 1)
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if let Self::CoordinateMonomial(e) = self {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.len(),
                });
            }
        }
        Ok(())
    }

    /// The homogeneous function `g` on `R^d` this functional is asymptotic to.
    /// For word-length powers this is the corresponding power of `||·||_L`.
    pub fn limit_value(&self, shape: &LimitShape, x: &[f64]) -> Result<f64> {
        Ok(match self {
            Self::WordLengthPower(p) | Self::NormPower(p) => shape.norm_f64(x).powi(*p as i32),
            Self::EuclideanPower(p) => x.iter().map(|v| v * v).sum::<f64>().sqrt().powi(*p as i32),
            Self::CoordinateMonomial(e) => x.iter().zip(e).map(|(v, &k)| v.powi(k as i32)).product(),
            Self::ConstantOne => 1.0,
            Self::CoprimeIndicator => return Err(Error::NotHomogeneous),
        })
    }
}

/// `true` when the gcd of the coordinates is 1.
pub(crate) fn is_primitive(x: &[i64]) -> bool {
    x.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WordLengthPower(p) => write!(f, "word-length:{p}"),
            Self::NormPower(p) => write!(f, "norm:{p}"),
            Self::EuclideanPower(p) => write!(f, "euclidean:{p}"),
            Self::CoordinateMonomial(e) => {
                let s: Vec<String> = e.iter().map(|k| k.to_string()).collect();
                write!(f, "monomial:{}", s.join(","))
            }
            Self::CoprimeIndicator => write!(f, "coprime"),
            Self::ConstantOne => write!(f, "one"),
        }
    }
}

/// Parses `word-length[:p]`, `norm[:p]`, `euclidean[:p]`, `monomial:e1,e2,..`,
/// `coprime` and `one`. The power defaults to 1.
impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let bad = || Error::InvalidArgument(format!("bad functional {s:?}"));
        let power = || -> Result<u32> { arg.map_or(Ok(1), |a| a.trim().parse().map_err(|_| bad())) };
        match kind.trim() {
            "word-length" => Ok(Self::WordLengthPower(power()?)),
            "norm" => Ok(Self::NormPower(power()?)),
            "euclidean" => Ok(Self::EuclideanPower(power()?)),
            "monomial" => {
                let e = arg
                    .ok_or_else(bad)?
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad()))
                    .collect::<Result<Vec<u32>>>()?;
                Ok(Self::CoordinateMonomial(e))
            }
            "coprime" if arg.is_none() => Ok(Self::CoprimeIndicator),
            "one" if arg.is_none() => Ok(Self::ConstantOne),
            _ => Err(bad()),
        }
    }
}
