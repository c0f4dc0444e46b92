//! JSON and CSV output. Rationals are written as `"p/q"`, or `"p"` when
//! integral.

use std::io::Write;

use serde::Serialize;

use crate::asymptotics::{AverageValue, ConvergenceReport, FactorCheck, GrowthSeries};
use crate::counting::{picks_identity, PickReport};
use crate::error::Result;
use crate::hull::{LimitShape, TRIANGULATION_RULE};
use crate::lattice::GeneratorSet;
use crate::measure::ConeMeasure;
use crate::metric::MetricTable;
use crate::Rational;

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetRecord {
    pub vertices: Vec<usize>,
    pub normal: Vec<i64>,
    pub support: i64,
    pub simplices: Vec<Vec<usize>>,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PickRecord {
    pub interior: u64,
    pub boundary: u64,
    pub area: String,
    pub holds: bool,
}

impl From<&PickReport> for PickRecord {
    fn from(p: &PickReport) -> Self {
        Self {
            interior: p.interior,
            boundary: p.boundary,
            area: rational_string(&p.area),
            holds: p.holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
    pub generator_hash: String,
    pub vertices: Vec<Vec<i64>>,
    pub interior_generators: Vec<Vec<i64>>,
    pub volume: String,
    pub facets: Vec<FacetRecord>,
    pub triangulation_rule: &'static str,
    /// Cone-measure weight per facet simplex, in global simplex order.
    pub simplex_weights: Vec<String>,
    pub pick: Option<PickRecord>,
}

pub fn hull_report(gens: &GeneratorSet, shape: &LimitShape, measure: &ConeMeasure) -> Result<HullReport> {
    let facet_weights = measure.facet_weights();
    let pick = if shape.dim() == 2 {
        Some(PickRecord::from(&picks_identity(shape)?))
    } else {
        None
    };
    Ok(HullReport {
        dim: shape.dim(),
        generators: gens.vectors().iter().map(|v| v.coords().to_vec()).collect(),
        generator_hash: gens.content_hash(),
        vertices: shape.vertices().iter().map(|v| v.coords().to_vec()).collect(),
        interior_generators: shape.interior_generators().iter().map(|v| v.coords().to_vec()).collect(),
        volume: rational_string(shape.volume()),
        facets: shape
            .facets()
            .iter()
            .zip(&facet_weights)
            .map(|(f, w)| FacetRecord {
                vertices: f.vertex_indices().to_vec(),
                normal: f.normal().coords().to_vec(),
                support: f.support(),
                simplices: f.simplices().to_vec(),
                weight: rational_string(w),
            })
            .collect(),
        triangulation_rule: TRIANGULATION_RULE,
        simplex_weights: measure.weights().iter().map(rational_string).collect(),
        pick,
    })
}

pub fn write_json<W: Write, T: Serialize>(out: W, value: &T) -> Result<()> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Columns `n, beta, sigma`.
pub fn write_growth_csv<W: Write>(out: W, series: &GrowthSeries) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "beta", "sigma"])?;
    for (n, (b, s)) in series.beta.iter().zip(&series.sigma).enumerate() {
        w.write_record([n.to_string(), b.to_string(), s.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `n, sigma, sector_0, .., sector_{m-1}, D, D_facet`.
pub fn write_convergence_csv<W: Write>(out: W, report: &ConvergenceReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let m = report.histograms.first().map_or(0, |h| h.counts.len());
    let mut header = vec!["n".to_string(), "sigma".to_string()];
    header.extend((0..m).map(|i| format!("sector_{i}")));
    header.extend(["D".to_string(), "D_facet".to_string()]);
    w.write_record(&header)?;
    for (i, h) in report.histograms.iter().enumerate() {
        let mut row = vec![h.radius.to_string(), h.total().to_string()];
        row.extend(h.counts.iter().map(|c| c.to_string()));
        row.push(report.deviations[i].to_string());
        row.push(report.facet_deviations[i].to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn average_string(a: &AverageValue) -> String {
    match a {
        AverageValue::Exact(r) => rational_string(r),
        AverageValue::Float(x) => x.to_string(),
    }
}

/// One averages row per radius.
pub struct AverageRow {
    pub radius: u32,
    pub sphere: AverageValue,
    pub ball: AverageValue,
    pub factor: Option<FactorCheck>,
}

/// Columns `n, sphere_avg, ball_avg, sphere_normalized, ball_normalized,
/// ratio, target`. The last four are empty at `n = 0` and for functionals
/// that are not homogeneous.
pub fn write_averages_csv<W: Write>(out: W, rows: &[AverageRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n",
        "sphere_avg",
        "ball_avg",
        "sphere_normalized",
        "ball_normalized",
        "ratio",
        "target",
    ])?;
    for r in rows {
        let mut row = vec![r.radius.to_string(), average_string(&r.sphere), average_string(&r.ball)];
        match &r.factor {
            Some(f) => row.extend([
                f.sphere_normalized.to_string(),
                f.ball_normalized.to_string(),
                f.exact_ratio.as_ref().map_or_else(|| f.ratio.to_string(), rational_string),
                rational_string(&f.target),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 4)),
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Points of `S_n` scaled by `1/n`, columns `x0, .., x{d-1}`.
pub fn write_sphere_points_csv<W: Write>(out: W, table: &MetricTable, n: u32) -> Result<()> {
    table.check_radius(n)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record((0..table.dim()).map(|i| format!("x{i}")))?;
    let scale = n.max(1) as f64;
    for p in table.sphere(n) {
        w.write_record(p.iter().map(|&c| (c as f64 / scale).to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Closed vertex cycle of a planar limit shape, columns `x0, x1`.
pub fn write_polygon_csv<W: Write>(out: W, shape: &LimitShape) -> Result<()> {
    let cycle = shape.polygon_cycle()?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x0", "x1"])?;
    for v in cycle.iter().chain(cycle.first()) {
        w.write_record(v.coords().iter().map(|c| c.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
