//! Density of words with a simple spelling.

use num::bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::hull::LimitShape;
use crate::metric::{MetricTable, SimpleSpeller};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub radius: u32,
    pub sphere_simple: u64,
    pub sphere_total: u64,
    pub ball_simple: u64,
    pub ball_total: u64,
    /// `r / (2A)` with `r` sides and area `A`; only in the plane.
    pub target: Option<Rational>,
}

impl DensityReport {
    pub fn sphere_density(&self) -> f64 {
        self.sphere_simple as f64 / self.sphere_total as f64
    }

    pub fn ball_density(&self) -> f64 {
        self.ball_simple as f64 / self.ball_total as f64
    }
}

/// `r / (2A)` for a polygon with `r` sides and area `A`.
pub fn planar_density_target(shape: &LimitShape) -> Option<Rational> {
    (shape.dim() == 2).then(|| {
        Rational::from_integer(BigInt::from(shape.facets().len())) / (shape.volume() * Rational::from_integer(2.into()))
    })
}

pub fn simple_spelling_density(table: &MetricTable, shape: &LimitShape, n: u32) -> Result<DensityReport> {
    table.check_radius(n)?;
    shape.check_dim(table.dim())?;
    let speller = SimpleSpeller::new(shape)?;
    let dim = table.dim();
    let per_sphere: Vec<(u64, u64)> = (0..=n)
        .into_par_iter()
        .map(|r| {
            let pts = table.sphere_coords(r);
            let simple = pts
                .par_chunks(dim * 1024)
                .map(|c| c.chunks_exact(dim).filter(|p| speller.has_simple_spelling(p)).count() as u64)
                .sum();
            (simple, table.sphere_len(r) as u64)
        })
        .collect();
    let (sphere_simple, sphere_total) = per_sphere[n as usize];
    Ok(DensityReport {
        radius: n,
        sphere_simple,
        sphere_total,
        ball_simple: per_sphere.iter().map(|p| p.0).sum(),
        ball_total: per_sphere.iter().map(|p| p.1).sum(),
        target: planar_density_target(shape),
    })
}
