//! Comparisons between the word metric and the Minkowski norm of `L`.

use num::bigint::BigInt;
use num::rational::Ratio;

use crate::counting::lattice_points;
use crate::error::{Error, Result};
use crate::hull::LimitShape;
use crate::lattice::{GeneratorSet, LatticeVector};
use crate::metric::table::{bfs_ball, MetricTable};
use crate::Rational;

/// The bounded-difference constant: the largest word length of a lattice
/// point of `Q`.
pub fn compute_k(gens: &GeneratorSet, shape: &LimitShape) -> Result<u32> {
    let targets = lattice_points(shape, 1);
    let mut radius = 2u32;
    loop {
        let table = bfs_ball(gens, radius)?;
        let lengths: Option<Vec<u32>> = targets.iter().map(|p| table.length(p.coords())).collect();
        if let Some(lengths) = lengths {
            return Ok(lengths.into_iter().max().unwrap_or(0).max(1));
        }
        radius *= 2;
    }
}

#[derive(Clone, Debug)]
pub struct NormBoundReport {
    pub checked: usize,
    /// Points violating `||w||_L <= |w| < ||w||_L + K`, with `|w|` and `||w||_L`.
    pub violations: Vec<(LatticeVector, u32, Rational)>,
    /// Largest observed `|w| - ||w||_L`.
    pub max_gap: Rational,
}

impl NormBoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `||w||_L <= |w| < ||w||_L + K` on every point of the table.
pub fn verify_norm_bounds(table: &MetricTable, shape: &LimitShape, k: u32) -> Result<NormBoundReport> {
    shape.check_dim(table.dim())?;
    let mut violations = Vec::new();
    let mut best = Ratio::new(0i64, 1);
    let mut checked = 0;
    for (p, len) in table.iter() {
        checked += 1;
        let (num, den) = shape.norm_fraction(p);
        let len = len as i64;
        // num/den <= len  and  len - k < num/den
        let lower_ok = num <= len * den;
        let upper_ok = (len - k as i64) * den < num;
        if !(lower_ok && upper_ok) {
            violations.push((
                LatticeVector::from(p),
                len as u32,
                Rational::new(BigInt::from(num), BigInt::from(den)),
            ));
        }
        let gap = Ratio::new(len * den - num, den);
        if gap > best {
            best = gap;
        }
    }
    Ok(NormBoundReport {
        checked,
        violations,
        max_gap: Rational::new(BigInt::from(*best.numer()), BigInt::from(*best.denom())),
    })
}

/// Discrete form of `(n-1)Q + S = nQ`: every lattice point of `nQ` is a
/// generator away from a lattice point of `(n-1)Q`.
pub fn tiling_check(shape: &LimitShape, gens: &GeneratorSet, n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("tiling check needs n >= 2, got {n}")));
    }
    shape.check_dim(gens.dim())?;
    let m = n as i64 - 1;
    let dim = gens.dim();
    let mut y = vec![0i64; dim];
    for x in lattice_points(shape, n) {
        let ok = gens.vectors().iter().any(|s| {
            for ((yk, a), b) in y.iter_mut().zip(x.coords()).zip(s.coords()) {
                *yk = a - b;
            }
            let (num, den) = shape.norm_fraction(&y);
            num <= m * den
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `max_{x in S_n} (1 - ||x||_L / n)`: how far the normalized sphere sits
/// inside `L`.
pub fn hausdorff_gap(table: &MetricTable, shape: &LimitShape, n: u32) -> Result<Rational> {
    table.check_radius(n)?;
    shape.check_dim(table.dim())?;
    if n == 0 {
        return Err(Error::InvalidArgument("the gap is defined for n >= 1".into()));
    }
    // minimize ||x||_L over the sphere
    let mut min: Option<Ratio<i64>> = None;
    for p in table.sphere(n) {
        let r = shape.norm_ratio(p);
        if min.is_none_or(|m| r < m) {
            min = Some(r);
        }
    }
    let min = min.ok_or(Error::EmptySphere(n))?;
    let gap = Ratio::from_integer(1) - min / Ratio::from_integer(n as i64);
    Ok(Rational::new(BigInt::from(*gap.numer()), BigInt::from(*gap.denom())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicMultiples {
    pub generator: LatticeVector,
    pub on_boundary: bool,
    /// Largest `m` with `m * a` in the table.
    pub checked_up_to: u32,
    /// Smallest `m` with `|m a| < m`, if any was found.
    pub first_shortcut: Option<u32>,
}

/// For every generator `a`, looks for multiples `m a` whose word length is
/// below `m`. Generators on `L` never have one; interior generators do.
pub fn geodesic_multiples(table: &MetricTable, shape: &LimitShape) -> Result<Vec<GeodesicMultiples>> {
    shape.check_dim(table.dim())?;
    let mut out = Vec::new();
    for a in table.gens().vectors() {
        let on_boundary = shape.minkowski_norm(a)? == Rational::from_integer(1.into());
        let mut m = 1u32;
        let mut first_shortcut = None;
        let mut checked_up_to = 0;
        while let Some(len) = table.length(a.scaled(m as i64).coords()) {
            checked_up_to = m;
            if len < m && first_shortcut.is_none() {
                first_shortcut = Some(m);
            }
            m += 1;
        }
        out.push(GeodesicMultiples {
            generator: a.clone(),
            on_boundary,
            checked_up_to,
            first_shortcut,
        });
    }
    Ok(out)
}
