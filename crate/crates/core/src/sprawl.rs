//! The sprawl statistic: mean normalized distance between two points of a
//! sphere, estimated on finite spheres and as an integral over `L × L`.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::LimitShape;
use crate::measure::{ConeMeasure, ConeSampler};
use crate::metric::{compute_k, MetricTable};
use crate::stats::{parallel_mean, MC_BATCH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SprawlMethod {
    EmpiricalExhaustive,
    EmpiricalSampled,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprawlEstimate {
    pub value: f64,
    pub method: SprawlMethod,
    /// Sphere radius for empirical methods, sample count for Monte Carlo.
    pub radius_or_samples: u64,
    /// 0 for exhaustive sums and closed forms.
    pub stderr: f64,
    /// Pairs whose distance fell outside the table and was replaced by the
    /// norm of the difference.
    pub approximated_pairs: u64,
}

struct PairDistance<'a> {
    table: &'a MetricTable,
    shape: &'a LimitShape,
    n: f64,
    approximated: AtomicU64,
}

impl PairDistance<'_> {
    fn normalized(&self, x: &[i64], y: &[i64], diff: &mut [i64]) -> f64 {
        for ((d, a), b) in diff.iter_mut().zip(x).zip(y) {
            *d = a - b;
        }
        match self.table.length(diff) {
            Some(l) => l as f64 / self.n,
            None => {
                self.approximated.fetch_add(1, Ordering::Relaxed);
                let (num, den) = self.shape.norm_fraction(diff);
                num as f64 / den as f64 / self.n
            }
        }
    }
}

/// Sprawl over `S_n × S_n`: the exhaustive double sum when `|S_n|^2` fits in
/// `pair_budget`, otherwise `pair_budget` i.i.d. uniform pairs.
pub fn sprawl_empirical(
    table: &MetricTable,
    shape: &LimitShape,
    n: u32,
    pair_budget: u64,
    seed: u64,
) -> Result<SprawlEstimate> {
    table.check_radius(n)?;
    shape.check_dim(table.dim())?;
    if n == 0 {
        return Err(Error::EmptySphere(0));
    }
    let dim = table.dim();
    let pts = table.sphere_coords(n);
    let m = table.sphere_len(n) as u64;
    let pd = PairDistance {
        table,
        shape,
        n: n as f64,
        approximated: AtomicU64::new(0),
    };
    let (value, stderr, method) = if m.saturating_mul(m) <= pair_budget {
        let total: f64 = pts
            .par_chunks(dim)
            .map(|x| {
                let mut diff = vec![0; dim];
                pts.chunks_exact(dim).map(|y| pd.normalized(x, y, &mut diff)).sum::<f64>()
            })
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        (total / (m * m) as f64, 0.0, SprawlMethod::EmpiricalExhaustive)
    } else {
        if pair_budget < 2 {
            return Err(Error::InvalidArgument("pair budget must be at least 2".into()));
        }
        let st = parallel_mean(pair_budget, seed, MC_BATCH, |rng| {
            let i = rng.random_range(0..m) as usize;
            let j = rng.random_range(0..m) as usize;
            let mut diff = vec![0; dim];
            pd.normalized(&pts[i * dim..(i + 1) * dim], &pts[j * dim..(j + 1) * dim], &mut diff)
        });
        (st.mean(), st.stderr(), SprawlMethod::EmpiricalSampled)
    };
    Ok(SprawlEstimate {
        value,
        method,
        radius_or_samples: n as u64,
        stderr,
        approximated_pairs: pd.approximated.into_inner(),
    })
}

/// `∫_{L×L} ||x − y||_L dμ²` by Monte Carlo. In dimension 1 the measure has
/// two atoms and the integral is exactly 1.
pub fn sprawl_mc(shape: &LimitShape, measure: &ConeMeasure, samples: u64, seed: u64) -> Result<SprawlEstimate> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let mut est = SprawlEstimate {
        value: 1.0,
        method: SprawlMethod::MonteCarlo,
        radius_or_samples: samples,
        stderr: 0.0,
        approximated_pairs: 0,
    };
    if shape.dim() == 1 {
        return Ok(est);
    }
    let sampler = ConeSampler::new(shape, measure);
    let dim = shape.dim();
    let st = parallel_mean(samples, seed, MC_BATCH, |rng| {
        let mut x = vec![0.0; dim];
        let mut y = vec![0.0; dim];
        sampler.sample_into(rng, &mut x);
        sampler.sample_into(rng, &mut y);
        for (a, b) in x.iter_mut().zip(&y) {
            *a -= b;
        }
        shape.norm_f64(&x)
    });
    est.value = st.mean();
    est.stderr = st.stderr();
    Ok(est)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprawlConfig {
    pub radius: u32,
    pub pair_budget: u64,
    pub samples: u64,
    pub seed: u64,
    /// Margin for the strict bound: every estimate must be below `2 - delta`.
    pub delta: f64,
}

impl Default for SprawlConfig {
    fn default() -> Self {
        Self {
            radius: 60,
            pair_budget: 1_000_000,
            samples: 1_000_000,
            seed: crate::DEFAULT_SEED,
            delta: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SprawlReport {
    pub empirical: SprawlEstimate,
    pub monte_carlo: SprawlEstimate,
    pub difference: f64,
    /// `sqrt(se_1^2 + se_2^2)`.
    pub combined_stderr: f64,
    /// Bias allowance `K / n` of the finite-sphere estimator.
    pub bias_allowance: f64,
    pub below_two: bool,
}

impl SprawlReport {
    /// Whether the estimators agree within `3σ + K/n`.
    pub fn consistent(&self) -> bool {
        self.difference.abs() <= 3.0 * self.combined_stderr + self.bias_allowance
    }
}

pub fn sprawl_report(
    shape: &LimitShape,
    measure: &ConeMeasure,
    table: &MetricTable,
    config: &SprawlConfig,
) -> Result<SprawlReport> {
    let empirical = sprawl_empirical(table, shape, config.radius, config.pair_budget, config.seed)?;
    let monte_carlo = sprawl_mc(shape, measure, config.samples, config.seed)?;
    let k = compute_k(table.gens(), shape)?;
    let bound = 2.0 - config.delta;
    Ok(SprawlReport {
        difference: empirical.value - monte_carlo.value,
        combined_stderr: empirical.stderr.hypot(monte_carlo.stderr),
        bias_allowance: k as f64 / config.radius as f64,
        below_two: empirical.value < bound && monte_carlo.value < bound,
        empirical,
        monte_carlo,
    })
}
