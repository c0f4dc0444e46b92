//! Exact convex hull `Q` of a generating set, its boundary `L`, the Minkowski
//! norm whose unit sphere is `L`, and the sector decomposition of `R^d`.
//!
//! Facets are found by exact orientation tests: every affinely independent
//! `d`-subset of the generators spans a hyperplane, and the hyperplane is a
//! facet iff all generators lie weakly on the origin side of it. Because the
//! hull is centrally symmetric with the origin in its interior, every facet is
//! `{x : <n, x> = c}` with an integer primitive outward normal `n` and an
//! integer support `c > 0`, and the norm is `max_f <n_f, x> / c_f`.
//!
//! Each facet is triangulated by a pulling fan: the lowest-index vertex of the
//! facet is coned over the (recursively triangulated) ridges that avoid it.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{GeneratorSet, LatticeVector};
use crate::linalg;
use crate::Rational;

/// Human-readable description of the triangulation rule, exported alongside
/// every measure.
pub const TRIANGULATION_RULE: &str = "pulling fan: each facet (and recursively each ridge) is coned from its lowest-index vertex; vertices sorted lexicographically";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    vertex_indices: Vec<usize>,
    normal: LatticeVector,
    support: i64,
    simplices: Vec<Vec<usize>>,
    boundary_generators: Vec<LatticeVector>,
}

impl Facet {
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    /// Primitive outward integer normal.
    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    /// The value of `<normal, y>` on the facet.
    pub fn support(&self) -> i64 {
        self.support
    }

    /// Triangulation of the facet, each simplex as `d` vertex indices.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Generators on this facet that are not vertices of it.
    pub fn boundary_generators(&self) -> &[LatticeVector] {
        &self.boundary_generators
    }
}

/// One simplex of the triangulation of `L`, with the data needed for fast
/// cone-membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SimplexData {
    pub facet: usize,
    pub vertices: Vec<usize>,
    pub abs_det: BigInt,
    /// Rows of `sign(det) * adj(V)` where `V` has the simplex vertices as
    /// columns; `x` lies in the cone iff every row dotted with `x` is `>= 0`.
    pub cone_rows: Vec<i64>,
}

/// The limit shape: `Q = conv(S)` with boundary `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitShape {
    dim: usize,
    vertices: Vec<LatticeVector>,
    facets: Vec<Facet>,
    volume: Rational,
    simplices: Vec<SimplexData>,
    normals: Vec<i64>,
    supports: Vec<i64>,
    interior_generators: Vec<LatticeVector>,
}

/// Builds the limit shape of a validated generating set.
pub fn build_hull(gens: &GeneratorSet) -> Result<LimitShape> {
    LimitShape::from_points(gens.dim(), gens.vectors())
}

impl LimitShape {
    /// Hull of a centrally symmetric, full-dimensional point set.
    pub fn from_points(dim: usize, points: &[LatticeVector]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut pts: Vec<LatticeVector> = points.to_vec();
        for p in &pts {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if p.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        pts.sort();
        pts.dedup();
        let rows: Vec<Vec<i64>> = pts.iter().map(|p| p.coords().to_vec()).collect();
        if linalg::rank(&rows) < dim {
            return Err(Error::NotFullRank { dim });
        }

        let hyperplanes = enumerate_facet_hyperplanes(dim, &pts)?;

        // A point on the boundary is extreme iff the normals of the facets
        // through it span R^d.
        let mut vertices = Vec::new();
        let mut interior_generators = Vec::new();
        for p in &pts {
            let through: Vec<Vec<i64>> = hyperplanes
                .iter()
                .filter(|(n, c)| linalg::dot(n, p.coords()) == *c)
                .map(|(n, _)| n.clone())
                .collect();
            if through.is_empty() {
                interior_generators.push(p.clone());
            } else if linalg::rank(&through) == dim {
                vertices.push(p.clone());
            }
        }
        for v in &vertices {
            if !vertices.contains(&-v) {
                return Err(Error::NotSymmetric(v.clone()));
            }
        }

        let mut facets: Vec<Facet> = hyperplanes
            .iter()
            .map(|(n, c)| {
                let vertex_indices: Vec<usize> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| linalg::dot(n, v.coords()) == *c)
                    .map(|(i, _)| i)
                    .collect();
                let boundary_generators = pts
                    .iter()
                    .filter(|p| linalg::dot(n, p.coords()) == *c && !vertices.contains(p))
                    .cloned()
                    .collect();
                Facet {
                    vertex_indices,
                    normal: LatticeVector::new(n.clone()),
                    support: *c,
                    simplices: Vec::new(),
                    boundary_generators,
                }
            })
            .collect();
        facets.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));

        let facet_sets: Vec<Vec<usize>> = facets.iter().map(|f| f.vertex_indices.clone()).collect();
        for facet in &mut facets {
            facet.simplices = triangulate_face(&facet.vertex_indices, dim - 1, &facet_sets, &vertices);
        }

        let mut simplices = Vec::new();
        let mut det_sum = BigInt::zero();
        for (fi, facet) in facets.iter().enumerate() {
            for s in &facet.simplices {
                let data = simplex_data(fi, s, &vertices)?;
                det_sum += &data.abs_det;
                simplices.push(data);
            }
        }
        let factorial: BigInt = (1..=dim).map(BigInt::from).product();
        let volume = Rational::new(det_sum, factorial);

        let normals = facets.iter().flat_map(|f| f.normal.coords().to_vec()).collect();
        let supports = facets.iter().map(|f| f.support).collect();

        Ok(Self {
            dim,
            vertices,
            facets,
            volume,
            simplices,
            normals,
            supports,
            interior_generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points of `Q` (the significant generators), sorted.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Euclidean volume of `Q`.
    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    /// Generators strictly inside `Q`.
    pub fn interior_generators(&self) -> &[LatticeVector] {
        &self.interior_generators
    }

    /// Non-extreme generators lying on `L`.
    pub fn boundary_generators(&self) -> Vec<&LatticeVector> {
        let mut out: Vec<&LatticeVector> = self
            .facets
            .iter()
            .flat_map(|f| f.boundary_generators.iter())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    /// Vertex indices of simplex `i` in the global simplex order (facet by
    /// facet, then fan order within the facet).
    pub fn simplex_vertices(&self, i: usize) -> &[usize] {
        &self.simplices[i].vertices
    }

    pub fn simplex_facet(&self, i: usize) -> usize {
        self.simplices[i].facet
    }

    pub(crate) fn simplex_abs_det(&self, i: usize) -> &BigInt {
        &self.simplices[i].abs_det
    }

    /// Largest absolute vertex coordinate.
    pub fn max_abs_coord(&self) -> i64 {
        self.vertices
            .iter()
            .flat_map(|v| v.coords().iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// The norm as an unreduced fraction `(num, den)` with `den` the support
    /// of a maximizing facet. The first maximizing facet is used.
    #[inline]
    pub fn norm_fraction(&self, x: &[i64]) -> (i64, i64) {
        debug_assert_eq!(x.len(), self.dim);
        let mut best_num = i64::MIN;
        let mut best_den = 1i64;
        for (n, &c) in self.normals.chunks_exact(self.dim).zip(&self.supports) {
            let v = linalg::dot(n, x);
            if (v as i128) * (best_den as i128) > (best_num as i128) * (c as i128) {
                best_num = v;
                best_den = c;
            }
        }
        (best_num, best_den)
    }

    /// Exact Minkowski norm `||x||_L`.
    pub fn minkowski_norm(&self, x: &LatticeVector) -> Result<Rational> {
        self.check_dim(x.dim())?;
        let (num, den) = self.norm_fraction(x.coords());
        Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Norm as a reduced small rational, for hot loops that need exactness.
    pub fn norm_ratio(&self, x: &[i64]) -> Ratio<i64> {
        let (n, d) = self.norm_fraction(x);
        Ratio::new(n, d)
    }

    pub fn norm_f64(&self, x: &[f64]) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for (n, &c) in self.normals.chunks_exact(self.dim).zip(&self.supports) {
            let v: f64 = n.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum::<f64>() / c as f64;
            if v > best {
                best = v;
            }
        }
        best
    }

    /// Index of the facet simplex whose sector contains `x`; ties go to the
    /// lowest simplex index.
    pub fn sector_of(&self, x: &LatticeVector) -> Result<usize> {
        self.check_dim(x.dim())?;
        self.sector_of_coords(x.coords())
    }

    pub fn sector_of_coords(&self, x: &[i64]) -> Result<usize> {
        if x.iter().all(|&c| c == 0) {
            return Err(Error::ZeroVector);
        }
        let (num, den) = self.norm_fraction(x);
        let d = self.dim;
        for (i, s) in self.simplices.iter().enumerate() {
            let f = s.facet;
            let v = linalg::dot(&self.normals[f * d..(f + 1) * d], x);
            if (v as i128) * (den as i128) != (num as i128) * (self.supports[f] as i128) {
                continue;
            }
            if s.cone_rows.chunks_exact(d).all(|row| linalg::dot(row, x) >= 0) {
                return Ok(i);
            }
        }
        Err(Error::Internal(format!(
            "no sector contains {}",
            LatticeVector::from(x)
        )))
    }

    /// Facet indices whose hyperplane attains the norm of `x`.
    pub fn maximizing_facets(&self, x: &[i64]) -> Vec<usize> {
        let (num, den) = self.norm_fraction(x);
        let d = self.dim;
        (0..self.facets.len())
            .filter(|&f| {
                let v = linalg::dot(&self.normals[f * d..(f + 1) * d], x);
                (v as i128) * (den as i128) == (num as i128) * (self.supports[f] as i128)
            })
            .collect()
    }

    /// Vertices in counter-clockwise order; only meaningful for `d = 2`.
    pub fn polygon_cycle(&self) -> Result<Vec<LatticeVector>> {
        if self.dim != 2 {
            return Err(Error::DimensionUnsupported {
                supported: 2,
                got: self.dim,
            });
        }
        let mut vs = self.vertices.clone();
        vs.sort_by(|a, b| {
            let ta = (a.coords()[1] as f64).atan2(a.coords()[0] as f64);
            let tb = (b.coords()[1] as f64).atan2(b.coords()[0] as f64);
            ta.total_cmp(&tb)
        });
        Ok(vs)
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }
}

fn enumerate_facet_hyperplanes(dim: usize, pts: &[LatticeVector]) -> Result<Vec<(Vec<i64>, i64)>> {
    let mut found = BTreeSet::new();
    for combo in (0..pts.len()).combinations(dim) {
        let base = pts[combo[0]].coords();
        let diffs: Vec<Vec<i64>> = combo[1..]
            .iter()
            .map(|&i| pts[i].coords().iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal = linalg::primitive(&linalg::cross(&diffs, dim));
        if normal.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut normal: Vec<i64> = normal.iter().map(linalg::to_i64).collect::<Result<_>>()?;
        let mut c = linalg::dot(&normal, base);
        if c == 0 {
            continue;
        }
        if c < 0 {
            normal.iter_mut().for_each(|x| *x = -*x);
            c = -c;
        }
        if pts.iter().all(|p| linalg::dot(&normal, p.coords()) <= c) {
            found.insert((normal, c));
        }
    }
    Ok(found.into_iter().collect())
}

fn affine_dim(indices: &[usize], vertices: &[LatticeVector]) -> usize {
    if indices.len() <= 1 {
        return 0;
    }
    let base = vertices[indices[0]].coords();
    let diffs: Vec<Vec<i64>> = indices[1..]
        .iter()
        .map(|&i| vertices[i].coords().iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&diffs)
}

/// Pulling triangulation of a face of dimension `k` given by its sorted vertex
/// indices. Subfaces are the `(k-1)`-dimensional intersections with facets.
fn triangulate_face(
    face: &[usize],
    k: usize,
    facet_sets: &[Vec<usize>],
    vertices: &[LatticeVector],
) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for fs in facet_sets {
        let inter: Vec<usize> = face.iter().copied().filter(|i| fs.contains(i)).collect();
        if inter.len() < k || inter.len() == face.len() || subfaces.contains(&inter) {
            continue;
        }
        if affine_dim(&inter, vertices) == k - 1 {
            subfaces.push(inter);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces.iter().filter(|s| !s.contains(&apex)) {
        for simplex in triangulate_face(sub, k - 1, facet_sets, vertices) {
            let mut s = Vec::with_capacity(k + 1);
            s.push(apex);
            s.extend(simplex);
            out.push(s);
        }
    }
    out
}

fn simplex_data(facet: usize, simplex: &[usize], vertices: &[LatticeVector]) -> Result<SimplexData> {
    let dim = simplex.len();
    // rows of V^T: one vertex per row
    let vt: Vec<Vec<i64>> = simplex.iter().map(|&i| vertices[i].coords().to_vec()).collect();
    let det = linalg::det(&vt);
    if det.is_zero() {
        return Err(Error::Internal("degenerate facet simplex".into()));
    }
    // Columns of V are the vertices, so V = vt^T and adj(V) = adj(vt)^T.
    let adj_t = linalg::adjugate(&vt);
    let negative = det.is_negative();
    let mut cone_rows = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for row in adj_t.iter() {
            let mut v = linalg::to_i64(&row[i])?;
            if negative {
                v = -v;
            }
            cone_rows.push(v);
        }
    }
    Ok(SimplexData {
        facet,
        vertices: simplex.to_vec(),
        abs_det: det.abs(),
        cone_rows,
    })
}
