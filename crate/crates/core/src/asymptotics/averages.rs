//! Sphere and ball averages of functionals, their limits, and the
//! sphere-versus-ball factor.

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use rayon::prelude::*;

use crate::asymptotics::functional::{is_primitive, Functional};
use crate::error::{Error, Result};
use crate::hull::LimitShape;
use crate::measure::{rational_to_f64, ConeMeasure, ConeSampler};
use crate::metric::MetricTable;
use crate::stats::{parallel_mean, MC_BATCH};
use crate::Rational;

/// An average, exact whenever the functional takes rational values.
#[derive(Clone, Debug, PartialEq)]
pub enum AverageValue {
    Exact(Rational),
    Float(f64),
}

impl AverageValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(r) => rational_to_f64(r),
            Self::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Self::Exact(r) => Some(r),
            Self::Float(_) => None,
        }
    }
}

/// Sum of a functional over a set of points, kept as an integer numerator
/// over a fixed denominator when exact.
#[derive(Clone, Debug, PartialEq)]
enum Sum {
    Exact(BigInt),
    Float(f64),
}

impl Sum {
    fn add(&mut self, other: &Sum) {
        match (self, other) {
            (Sum::Exact(a), Sum::Exact(b)) => *a += b,
            (Sum::Float(a), Sum::Float(b)) => *a += b,
            _ => unreachable!("mixed sums"),
        }
    }
}

/// Accumulates in `i128` and spills to `BigInt` on overflow.
#[derive(Default)]
struct ExactAcc {
    small: i128,
    big: BigInt,
}

impl ExactAcc {
    fn add_small(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    fn finish(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

/// Evaluates a functional at lattice points as `numerator / denominator`
/// with a denominator shared by all points.
struct Evaluator<'a> {
    f: &'a Functional,
    shape: &'a LimitShape,
    lcm: i64,
    denominator: BigInt,
}

impl<'a> Evaluator<'a> {
    fn new(f: &'a Functional, shape: &'a LimitShape, dim: usize) -> Result<Self> {
        f.check_dim(dim)?;
        shape.check_dim(dim)?;
        let lcm = shape.facets().iter().fold(1i64, |l, fc| l.lcm(&fc.support()));
        let denominator = match f {
            Functional::NormPower(p) => BigInt::from(lcm).pow(*p),
            _ => BigInt::one(),
        };
        Ok(Self {
            f,
            shape,
            lcm,
            denominator,
        })
    }

    fn power(base: i128, p: u32, acc: &mut ExactAcc) {
        match base.checked_pow(p) {
            Some(v) => acc.add_small(v),
            None => acc.add_big(BigInt::from(base).pow(p)),
        }
    }

    fn add_exact(&self, x: &[i64], len: u32, acc: &mut ExactAcc) {
        match self.f {
            Functional::WordLengthPower(p) => Self::power(len as i128, *p, acc),
            Functional::NormPower(p) => {
                let (num, den) = self.shape.norm_fraction(x);
                Self::power(num as i128 * (self.lcm / den) as i128, *p, acc)
            }
            Functional::EuclideanPower(p) => {
                let r2: i128 = x.iter().map(|&c| c as i128 * c as i128).sum();
                Self::power(r2, p / 2, acc)
            }
            Functional::CoordinateMonomial(e) => {
                let mut v: Option<i128> = Some(1);
                for (&c, &k) in x.iter().zip(e) {
                    v = v.and_then(|v| (c as i128).checked_pow(k).and_then(|t| v.checked_mul(t)));
                }
                match v {
                    Some(v) => acc.add_small(v),
                    None => acc.add_big(
                        x.iter()
                            .zip(e)
                            .map(|(&c, &k)| BigInt::from(c).pow(k))
                            .product(),
                    ),
                }
            }
            Functional::CoprimeIndicator => acc.add_small(is_primitive(x) as i128),
            Functional::ConstantOne => acc.add_small(1),
        }
    }

    fn float(&self, x: &[i64]) -> f64 {
        let Functional::EuclideanPower(p) = self.f else {
            unreachable!("float path only for odd euclidean powers")
        };
        let r2: f64 = x.iter().map(|&c| (c as f64) * (c as f64)).sum();
        r2.sqrt().powi(*p as i32)
    }

    fn sum(&self, points: &[i64], dim: usize, len: u32) -> Sum {
        const CHUNK: usize = 8192;
        if self.f.is_rational_valued() {
            let total = points
                .par_chunks(dim * CHUNK)
                .map(|chunk| {
                    let mut acc = ExactAcc::default();
                    for p in chunk.chunks_exact(dim) {
                        self.add_exact(p, len, &mut acc);
                    }
                    acc.finish()
                })
                .reduce(BigInt::zero, |a, b| a + b);
            Sum::Exact(total)
        } else {
            let parts: Vec<f64> = points
                .par_chunks(dim * CHUNK)
                .map(|chunk| chunk.chunks_exact(dim).map(|p| self.float(p)).sum())
                .collect();
            Sum::Float(parts.iter().sum())
        }
    }

    fn average(&self, sum: &Sum, count: usize) -> AverageValue {
        match sum {
            Sum::Exact(s) => AverageValue::Exact(Rational::new(s.clone(), &self.denominator * BigInt::from(count))),
            Sum::Float(s) => AverageValue::Float(s / count as f64),
        }
    }
}

/// Average of `f` over the sphere `S_n`.
pub fn sphere_average(table: &MetricTable, shape: &LimitShape, f: &Functional, n: u32) -> Result<AverageValue> {
    table.check_radius(n)?;
    let ev = Evaluator::new(f, shape, table.dim())?;
    let s = ev.sum(table.sphere_coords(n), table.dim(), n);
    Ok(ev.average(&s, table.sphere_len(n)))
}

/// Average of `f` over the ball `B_n`.
pub fn ball_average(table: &MetricTable, shape: &LimitShape, f: &Functional, n: u32) -> Result<AverageValue> {
    Ok(average_profile(table, shape, f, n)?.pop().expect("nonempty").1)
}

/// `(sphere average, ball average)` for every radius `0..=n`, sharing one
/// pass over the table.
pub fn average_profile(
    table: &MetricTable,
    shape: &LimitShape,
    f: &Functional,
    n: u32,
) -> Result<Vec<(AverageValue, AverageValue)>> {
    table.check_radius(n)?;
    let dim = table.dim();
    let ev = Evaluator::new(f, shape, dim)?;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut ball: Option<Sum> = None;
    let mut ball_count = 0usize;
    for r in 0..=n {
        let s = ev.sum(table.sphere_coords(r), dim, r);
        match &mut ball {
            Some(b) => b.add(&s),
            None => ball = Some(s.clone()),
        }
        ball_count += table.sphere_len(r);
        out.push((
            ev.average(&s, table.sphere_len(r)),
            ev.average(ball.as_ref().expect("set"), ball_count),
        ));
    }
    Ok(out)
}

/// `v_g = ∫_L g dμ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitIntegral {
    pub value: f64,
    pub stderr: f64,
    /// Set when the integral is known in closed form.
    pub exact: Option<Rational>,
    /// Monte Carlo samples used; 0 for closed forms.
    pub samples: u64,
}

/// Integral of the limit function of `f` against cone measure. Word-length
/// and norm powers integrate to 1 (they are identically 1 on `L`), as does
/// the constant; everything else is estimated by Monte Carlo.
pub fn limit_integral(
    f: &Functional,
    shape: &LimitShape,
    measure: &ConeMeasure,
    samples: u64,
    seed: u64,
) -> Result<LimitIntegral> {
    f.check_dim(shape.dim())?;
    match f {
        Functional::CoprimeIndicator => Err(Error::NotHomogeneous),
        Functional::WordLengthPower(_) | Functional::NormPower(_) | Functional::ConstantOne => Ok(LimitIntegral {
            value: 1.0,
            stderr: 0.0,
            exact: Some(Rational::one()),
            samples: 0,
        }),
        _ => {
            if samples < 2 {
                return Err(Error::InvalidArgument("need at least 2 samples".into()));
            }
            let sampler = ConeSampler::new(shape, measure);
            let dim = shape.dim();
            let st = parallel_mean(samples, seed, MC_BATCH, |rng| {
                let mut x = vec![0.0; dim];
                sampler.sample_into(rng, &mut x);
                f.limit_value(shape, &x).expect("homogeneous")
            });
            Ok(LimitIntegral {
                value: st.mean(),
                stderr: st.stderr(),
                exact: None,
                samples,
            })
        }
    }
}

/// Ball versus sphere averages normalized by `n^k`, compared with the
/// limiting factor `d / (d + k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorCheck {
    pub radius: u32,
    pub ball_normalized: f64,
    pub sphere_normalized: f64,
    pub ratio: f64,
    /// Set when both averages are exact.
    pub exact_ratio: Option<Rational>,
    pub target: Rational,
}

impl FactorCheck {
    /// `|ratio / target - 1|`.
    pub fn relative_deviation(&self) -> f64 {
        (self.ratio / rational_to_f64(&self.target) - 1.0).abs()
    }
}

pub fn sphere_ball_factor_check(
    table: &MetricTable,
    shape: &LimitShape,
    f: &Functional,
    n: u32,
) -> Result<FactorCheck> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let (sphere, ball) = average_profile(table, shape, f, n)?.pop().expect("nonempty");
    let k = f.order();
    let scale = (n as f64).powi(k as i32);
    let exact_ratio = match (sphere.exact(), ball.exact()) {
        (Some(s), Some(b)) if !s.is_zero() => Some(b / s),
        _ => None,
    };
    let ratio = match &exact_ratio {
        Some(r) => rational_to_f64(r),
        None => ball.to_f64() / sphere.to_f64(),
    };
    let d = table.dim() as i64;
    Ok(FactorCheck {
        radius: n,
        ball_normalized: ball.to_f64() / scale,
        sphere_normalized: sphere.to_f64() / scale,
        ratio,
        exact_ratio,
        target: Rational::new(BigInt::from(d), BigInt::from(d + k as i64)),
    })
}

/// The closed form `(4n^3 + 6n^2 + 2n) / (6n^2 + 6n + 3)` for the mean
/// word length over the standard ball in `Z^2`.
pub fn standard_plane_ball_mean(n: u64) -> Rational {
    let n = BigInt::from(n);
    let num = BigInt::from(4) * n.pow(3) + BigInt::from(6) * &n * &n + BigInt::from(2) * &n;
    let den = BigInt::from(6) * &n * &n + BigInt::from(6) * &n + BigInt::from(3);
    Rational::new(num, den)
}
