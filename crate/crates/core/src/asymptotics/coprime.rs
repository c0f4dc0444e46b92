//! Coprime points on spheres and balls in the plane: ball averages settle
//! while sphere averages keep oscillating with the parity of `n`.

use crate::asymptotics::averages::average_profile;
use crate::asymptotics::functional::Functional;
use crate::error::{Error, Result};
use crate::hull::build_hull;
use crate::measure::rational_to_f64;
use crate::metric::MetricTable;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct CoprimeRow {
    pub radius: u32,
    pub sphere: Rational,
    pub ball: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoprimeReport {
    pub rows: Vec<CoprimeRow>,
    /// Mean of the sphere averages over the odd radii.
    pub odd_mean: Option<f64>,
    /// Smallest `odd_mean - sphere(n)` over the even radii.
    pub min_even_gap: Option<f64>,
}

impl CoprimeReport {
    pub fn row(&self, n: u32) -> Option<&CoprimeRow> {
        self.rows.iter().find(|r| r.radius == n)
    }
}

pub const SIX_OVER_PI_SQUARED: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// Ball and sphere averages of the coprime indicator at each radius.
/// Radius 0 is skipped in the parity statistics.
pub fn coprimality_demo(table: &MetricTable, radii: &[u32]) -> Result<CoprimeReport> {
    if table.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            supported: 2,
            got: table.dim(),
        });
    }
    let Some(&max) = radii.iter().max() else {
        return Err(Error::InvalidArgument("no radii".into()));
    };
    let shape = build_hull(table.gens())?;
    let profile = average_profile(table, &shape, &Functional::CoprimeIndicator, max)?;
    let rows: Vec<CoprimeRow> = radii
        .iter()
        .map(|&n| {
            let (s, b) = &profile[n as usize];
            CoprimeRow {
                radius: n,
                sphere: s.exact().expect("exact").clone(),
                ball: b.exact().expect("exact").clone(),
            }
        })
        .collect();
    let odd: Vec<f64> = rows
        .iter()
        .filter(|r| r.radius % 2 == 1)
        .map(|r| rational_to_f64(&r.sphere))
        .collect();
    let odd_mean = (!odd.is_empty()).then(|| odd.iter().sum::<f64>() / odd.len() as f64);
    let min_even_gap = odd_mean.and_then(|m| {
        rows.iter()
            .filter(|r| r.radius > 0 && r.radius % 2 == 0)
            .map(|r| m - rational_to_f64(&r.sphere))
            .reduce(f64::min)
    });
    Ok(CoprimeReport {
        rows,
        odd_mean,
        min_even_gap,
    })
}
