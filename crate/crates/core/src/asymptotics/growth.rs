//! Growth series and leading-coefficient extraction.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::metric::MetricTable;

/// Exact ball and sphere counts `β(n) = #B_n`, `σ(n) = #S_n` for `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSeries {
    pub beta: Vec<u64>,
    pub sigma: Vec<u64>,
}

impl GrowthSeries {
    pub fn radius(&self) -> u32 {
        (self.sigma.len() - 1) as u32
    }
}

pub fn growth_series(table: &MetricTable) -> GrowthSeries {
    let sigma: Vec<u64> = (0..=table.radius()).map(|n| table.sphere_len(n) as u64).collect();
    let beta = sigma
        .iter()
        .scan(0u64, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    GrowthSeries { beta, sigma }
}

/// Result of fitting `seq(n) / n^k ≈ c0 + c1 / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientFit {
    /// The leading coefficient `c0`.
    pub constant: f64,
    pub slope: f64,
    /// Largest absolute residual of the fit over the window.
    pub max_residual: f64,
    pub window: RangeInclusive<u32>,
}

/// Least-squares fit of `seq(n) / n^k` against `c0 + c1 / n` over `window`.
pub fn leading_coefficient(seq: &[u64], k: u32, window: RangeInclusive<u32>) -> Result<CoefficientFit> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo == 0 || hi < lo || hi as usize >= seq.len() {
        return Err(Error::DegenerateWindow(format!(
            "window {lo}..={hi} outside 1..={}",
            seq.len().saturating_sub(1)
        )));
    }
    if hi - lo + 1 < 8 {
        return Err(Error::DegenerateWindow(format!(
            "window {lo}..={hi} has fewer than 8 points"
        )));
    }
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .map(|n| {
            let nf = n as f64;
            (1.0 / nf, seq[n as usize] as f64 / nf.powi(k as i32))
        })
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let constant = my - slope * mx;
    let max_residual = pts
        .iter()
        .map(|&(x, y)| (y - constant - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(CoefficientFit {
        constant,
        slope,
        max_residual,
        window,
    })
}

/// The upper half of `1..=radius`, the default fitting window.
pub fn default_window(radius: u32) -> RangeInclusive<u32> {
    (radius / 2).max(1)..=radius
}
