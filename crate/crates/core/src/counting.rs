//! Lattice points in dilates of `Q`: counts, Ehrhart interpolation and Pick's
//! identity.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::hull::LimitShape;
use crate::lattice::LatticeVector;
use crate::linalg;
use crate::Rational;

/// Calls `f` on every point of the box `[-r, r]^dim`.
pub(crate) fn for_each_in_box(dim: usize, r: i64, mut f: impl FnMut(&[i64])) {
    let mut x = vec![-r; dim];
    loop {
        f(&x);
        let mut k = 0;
        loop {
            if k == dim {
                return;
            }
            if x[k] < r {
                x[k] += 1;
                break;
            }
            x[k] = -r;
            k += 1;
        }
    }
}

fn in_dilate(shape: &LimitShape, x: &[i64], n: i64) -> bool {
    shape
        .facets()
        .iter()
        .all(|f| f.normal().dot(x) <= n * f.support())
}

/// `#(Z^d ∩ nQ)` by enumeration over the bounding box.
pub fn count_lattice_points(shape: &LimitShape, n: u32) -> u64 {
    let n = n as i64;
    let mut count = 0u64;
    for_each_in_box(shape.dim(), n * shape.max_abs_coord(), |x| {
        if in_dilate(shape, x, n) {
            count += 1;
        }
    });
    count
}

/// The lattice points of `nQ`, first coordinate varying fastest.
pub fn lattice_points(shape: &LimitShape, n: u32) -> Vec<LatticeVector> {
    let n = n as i64;
    let mut out = Vec::new();
    for_each_in_box(shape.dim(), n * shape.max_abs_coord(), |x| {
        if in_dilate(shape, x, n) {
            out.push(LatticeVector::from(x));
        }
    });
    out
}

/// The Ehrhart polynomial of `Q`, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub coefficients: Vec<Rational>,
}

impl EhrhartPolynomial {
    pub fn eval(&self, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn leading(&self) -> &Rational {
        self.coefficients.last().expect("nonempty")
    }
}

/// Interpolates the counts at `n = 0..=d`, then checks the polynomial against
/// enumeration up to `max_n` and its leading coefficient against `vol(Q)`.
pub fn ehrhart_fit(shape: &LimitShape, max_n: u32) -> Result<EhrhartPolynomial> {
    let d = shape.dim();
    if (max_n as usize) < d {
        return Err(Error::InvalidArgument(format!(
            "max_n = {max_n} is below the dimension {d}"
        )));
    }
    let counts: Vec<u64> = (0..=d as u32).map(|n| count_lattice_points(shape, n)).collect();
    let coefficients = solve_vandermonde(&counts);
    let poly = EhrhartPolynomial { coefficients };
    for n in d as u32 + 1..=max_n {
        let counted = count_lattice_points(shape, n);
        let predicted = poly.eval(n as u64);
        if predicted != Rational::from_integer(BigInt::from(counted)) {
            return Err(Error::FitMismatch(format!(
                "n = {n}: polynomial predicts {predicted}, enumeration gives {counted}"
            )));
        }
    }
    if poly.leading() != shape.volume() {
        return Err(Error::FitMismatch(format!(
            "leading coefficient {} differs from volume {}",
            poly.leading(),
            shape.volume()
        )));
    }
    Ok(poly)
}

/// Coefficients of the polynomial through `(k, values[k])`, by Gaussian
/// elimination over the rationals.
fn solve_vandermonde(values: &[u64]) -> Vec<Rational> {
    let m = values.len();
    let mut a: Vec<Vec<Rational>> = (0..m)
        .map(|k| {
            let mut row: Vec<Rational> = (0..m)
                .map(|j| Rational::from_integer(BigInt::from(k as u64).pow(j as u32)))
                .collect();
            row.push(Rational::from_integer(BigInt::from(values[k])));
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&i| !a[i][c].is_zero()).expect("Vandermonde is invertible");
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=m {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..m {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=m {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[m].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickReport {
    pub interior: u64,
    pub boundary: u64,
    pub area: Rational,
    pub holds: bool,
}

/// Counts interior and boundary lattice points of `Q` and checks
/// `A = i + b/2 - 1`.
pub fn picks_identity(shape: &LimitShape) -> Result<PickReport> {
    if shape.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            supported: 2,
            got: shape.dim(),
        });
    }
    let mut interior = 0u64;
    let mut boundary = 0u64;
    for_each_in_box(2, shape.max_abs_coord(), |x| {
        let mut on_boundary = false;
        for f in shape.facets() {
            let v = linalg::dot(f.normal().coords(), x);
            if v > f.support() {
                return;
            }
            on_boundary |= v == f.support();
        }
        if on_boundary {
            boundary += 1;
        } else {
            interior += 1;
        }
    });
    let area = shape.volume().clone();
    let pick = Rational::from_integer(BigInt::from(interior))
        + Rational::new(BigInt::from(boundary), BigInt::from(2))
        - Rational::one();
    Ok(PickReport {
        interior,
        boundary,
        holds: pick == area,
        area,
    })
}
