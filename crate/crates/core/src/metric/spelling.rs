//! Simple spellings: nonnegative integer combinations of the vertices of a
//! single facet of `L`.
//!
//! Any such combination of total weight `m` has norm exactly `m`, so it is a
//! geodesic spelling. To test `w`, only facets whose hyperplane attains
//! `||w||_L` can contribute, and `m = ||w||_L` must be an integer. Within a
//! facet, a basis of `d` vertices is fixed; coefficients on the remaining
//! vertices are enumerated and the basis coefficients are solved exactly.

use num::ToPrimitive;

use crate::error::Result;
use crate::hull::LimitShape;
use crate::lattice::LatticeVector;
use crate::linalg;

/// A spelling `w = Σ c_i g_i` with nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpellingWitness {
    pub coefficients: Vec<(LatticeVector, u64)>,
}

impl SpellingWitness {
    pub fn length(&self) -> u64 {
        self.coefficients.iter().map(|(_, c)| c).sum()
    }

    pub fn evaluate(&self, dim: usize) -> LatticeVector {
        let mut out = vec![0i64; dim];
        for (g, c) in &self.coefficients {
            for (o, x) in out.iter_mut().zip(g.coords()) {
                *o += *c as i64 * x;
            }
        }
        LatticeVector::new(out)
    }
}

#[derive(Clone, Debug)]
struct FacetSolver {
    facet: usize,
    basis: Vec<usize>,
    extras: Vec<usize>,
    /// `adj(B)` rows with `B` the basis vertices as columns, and `det(B)`.
    adj: Vec<i64>,
    det: i64,
}

/// Precomputed per-facet solvers for repeated simple-spelling tests.
#[derive(Clone, Debug)]
pub struct SimpleSpeller<'a> {
    shape: &'a LimitShape,
    solvers: Vec<FacetSolver>,
}

impl<'a> SimpleSpeller<'a> {
    pub fn new(shape: &'a LimitShape) -> Result<Self> {
        let d = shape.dim();
        let mut solvers = Vec::with_capacity(shape.facets().len());
        for (fi, facet) in shape.facets().iter().enumerate() {
            // the first simplex of the fan is a basis of R^d
            let basis: Vec<usize> = shape.facets()[fi].simplices()[0].clone();
            let extras: Vec<usize> = facet
                .vertex_indices()
                .iter()
                .copied()
                .filter(|v| !basis.contains(v))
                .collect();
            let vt: Vec<Vec<i64>> = basis.iter().map(|&i| shape.vertices()[i].coords().to_vec()).collect();
            let det = linalg::to_i64(&linalg::det(&vt))?;
            let adj_t = linalg::adjugate(&vt);
            let mut adj = Vec::with_capacity(d * d);
            for i in 0..d {
                for row in &adj_t {
                    adj.push(linalg::to_i64(&row[i])?);
                }
            }
            solvers.push(FacetSolver {
                facet: fi,
                basis,
                extras,
                adj,
                det,
            });
        }
        Ok(Self { shape, solvers })
    }

    pub fn has_simple_spelling(&self, w: &[i64]) -> bool {
        self.witness(w).is_some()
    }

    /// A simple spelling of `w`, if one exists. The zero vector has the empty
    /// spelling.
    pub fn witness(&self, w: &[i64]) -> Option<SpellingWitness> {
        if w.iter().all(|&x| x == 0) {
            return Some(SpellingWitness { coefficients: Vec::new() });
        }
        let shape = self.shape;
        let (num, den) = shape.norm_fraction(w);
        if num % den != 0 {
            return None;
        }
        let m = num / den;
        for fi in shape.maximizing_facets(w) {
            let solver = &self.solvers[fi];
            debug_assert_eq!(solver.facet, fi);
            let mut extra = vec![0i64; solver.extras.len()];
            if let Some(w) = self.search_extras(solver, w, m, 0, &mut extra) {
                return Some(w);
            }
        }
        None
    }

    fn search_extras(
        &self,
        solver: &FacetSolver,
        w: &[i64],
        remaining: i64,
        k: usize,
        extra: &mut Vec<i64>,
    ) -> Option<SpellingWitness> {
        if k == solver.extras.len() {
            return self.solve_basis(solver, w, extra);
        }
        for c in 0..=remaining {
            extra[k] = c;
            if let Some(found) = self.search_extras(solver, w, remaining - c, k + 1, extra) {
                return Some(found);
            }
        }
        extra[k] = 0;
        None
    }

    fn solve_basis(&self, solver: &FacetSolver, w: &[i64], extra: &[i64]) -> Option<SpellingWitness> {
        let d = self.shape.dim();
        let verts = self.shape.vertices();
        let mut r: Vec<i64> = w.to_vec();
        for (&v, &c) in solver.extras.iter().zip(extra) {
            for (rk, x) in r.iter_mut().zip(verts[v].coords()) {
                *rk -= c * x;
            }
        }
        let mut coeffs = Vec::with_capacity(d);
        for row in solver.adj.chunks_exact(d) {
            let t = linalg::dot(row, &r);
            if t % solver.det != 0 {
                return None;
            }
            let c = t / solver.det;
            if c < 0 {
                return None;
            }
            coeffs.push(c);
        }
        let mut coefficients: Vec<(LatticeVector, u64)> = solver
            .basis
            .iter()
            .zip(&coeffs)
            .chain(solver.extras.iter().zip(extra))
            .filter(|(_, &c)| c > 0)
            .map(|(&v, &c)| (verts[v].clone(), c.to_u64().expect("nonnegative")))
            .collect();
        coefficients.sort();
        Some(SpellingWitness { coefficients })
    }
}

/// One-shot simple-spelling test.
pub fn has_simple_spelling(shape: &LimitShape, w: &LatticeVector) -> Result<bool> {
    shape.check_dim(w.dim())?;
    Ok(SimpleSpeller::new(shape)?.has_simple_spelling(w.coords()))
}

pub fn simple_spelling(shape: &LimitShape, w: &LatticeVector) -> Result<Option<SpellingWitness>> {
    shape.check_dim(w.dim())?;
    Ok(SimpleSpeller::new(shape)?.witness(w.coords()))
}
