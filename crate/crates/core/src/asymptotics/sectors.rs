//! Sector histograms of spheres and their convergence to cone measure.

use rayon::prelude::*;

use crate::error::Result;
use crate::hull::LimitShape;
use crate::measure::{cone_measure, rational_to_f64};
use crate::metric::MetricTable;

/// How many points of `S_n` fall in each facet-simplex sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHistogram {
    pub radius: u32,
    pub counts: Vec<u64>,
}

impl SectorHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let t = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / t).collect()
    }
}

const CHUNK_POINTS: usize = 4096;

pub fn sector_histogram(table: &MetricTable, shape: &LimitShape, n: u32) -> Result<SectorHistogram> {
    table.check_radius(n)?;
    shape.check_dim(table.dim())?;
    let dim = table.dim();
    let m = shape.num_simplices();
    let coords = table.sphere_coords(n);
    if n == 0 {
        return Ok(SectorHistogram {
            radius: 0,
            counts: vec![0; m],
        });
    }
    let counts = coords
        .par_chunks(dim * CHUNK_POINTS)
        .map(|chunk| -> Result<Vec<u64>> {
            let mut c = vec![0u64; m];
            for p in chunk.chunks_exact(dim) {
                c[shape.sector_of_coords(p)?] += 1;
            }
            Ok(c)
        })
        .try_reduce(
            || vec![0u64; m],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(SectorHistogram { radius: n, counts })
}

/// Per-radius sup deviation between the empirical sphere measure and cone
/// measure.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub radii: Vec<u32>,
    pub histograms: Vec<SectorHistogram>,
    /// `max_τ |μ_n(τ) − μ(τ)|` over facet simplices `τ`.
    pub deviations: Vec<f64>,
    /// The same sup taken over whole facets.
    pub facet_deviations: Vec<f64>,
    pub first_quartile_median: f64,
    pub last_quartile_median: f64,
}

impl ConvergenceReport {
    /// Whether the deviation trends down: the median over the last quarter
    /// of radii does not exceed the median over the first quarter.
    pub fn trend_ok(&self) -> bool {
        self.last_quartile_median <= self.first_quartile_median
    }

    pub fn deviation_at(&self, n: u32) -> Option<f64> {
        self.radii.iter().position(|&r| r == n).map(|i| self.deviations[i])
    }

    pub fn facet_deviation_at(&self, n: u32) -> Option<f64> {
        self.radii.iter().position(|&r| r == n).map(|i| self.facet_deviations[i])
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m == 0 {
        f64::NAN
    } else if m % 2 == 1 {
        v[m / 2]
    } else {
        (v[m / 2 - 1] + v[m / 2]) / 2.0
    }
}

fn sup_deviation(freq: &[f64], target: &[f64]) -> f64 {
    freq.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Radii must be positive; they are reported in the given order.
pub fn measure_convergence_report(table: &MetricTable, shape: &LimitShape, radii: &[u32]) -> Result<ConvergenceReport> {
    let measure = cone_measure(shape);
    let weights = measure.weights_f64();
    let facet_weights: Vec<f64> = measure.facet_weights().iter().map(rational_to_f64).collect();
    let nf = shape.facets().len();
    let mut histograms = Vec::with_capacity(radii.len());
    let mut deviations = Vec::with_capacity(radii.len());
    let mut facet_deviations = Vec::with_capacity(radii.len());
    for &n in radii {
        if n == 0 {
            return Err(crate::Error::InvalidArgument("radius 0 has no sphere measure".into()));
        }
        let h = sector_histogram(table, shape, n)?;
        let freq = h.frequencies();
        let mut ffreq = vec![0.0; nf];
        for (i, f) in freq.iter().enumerate() {
            ffreq[shape.simplex_facet(i)] += f;
        }
        deviations.push(sup_deviation(&freq, &weights));
        facet_deviations.push(sup_deviation(&ffreq, &facet_weights));
        histograms.push(h);
    }
    let q = (radii.len() / 4).max(1).min(radii.len());
    Ok(ConvergenceReport {
        radii: radii.to_vec(),
        histograms,
        first_quartile_median: median(&deviations[..q]),
        last_quartile_median: median(&deviations[deviations.len() - q..]),
        deviations,
        facet_deviations,
    })
}
