//! Cone measure on `L` and sampling from it.

use num::bigint::BigInt;
use num::Zero;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Exp1;

use crate::hull::LimitShape;
use crate::Rational;

/// Exact cone-measure weight of every facet simplex of `L`:
/// `|det(simplex)| / (d! vol(Q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMeasure {
    weights: Vec<Rational>,
    facet_of: Vec<usize>,
    num_facets: usize,
}

impl ConeMeasure {
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Measure of each facet: the sum of its simplex weights.
    pub fn facet_weights(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.num_facets];
        for (w, &f) in self.weights.iter().zip(&self.facet_of) {
            out[f] += w;
        }
        out
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational_to_f64).collect()
    }
}

pub fn cone_measure(shape: &LimitShape) -> ConeMeasure {
    let dim = shape.dim();
    let factorial: BigInt = (1..=dim).map(BigInt::from).product();
    let denom = shape.volume() * Rational::from_integer(factorial);
    let weights = (0..shape.num_simplices())
        .map(|i| Rational::from_integer(shape.simplex_abs_det(i).clone()) / &denom)
        .collect();
    ConeMeasure {
        weights,
        facet_of: (0..shape.num_simplices()).map(|i| shape.simplex_facet(i)).collect(),
        num_facets: shape.facets().len(),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub const MAX_SAMPLING_DIM: usize = 16;

/// Draws points of `L` distributed by the cone measure.
///
/// A simplex is picked with probability equal to its weight, then a uniform
/// point of it is formed from barycentric coordinates given by `d` normalized
/// standard-exponential draws.
#[derive(Clone, Debug)]
pub struct ConeSampler {
    dim: usize,
    index: WeightedIndex<f64>,
    simplex_coords: Vec<f64>,
}

impl ConeSampler {
    pub fn new(shape: &LimitShape, measure: &ConeMeasure) -> Self {
        let dim = shape.dim();
        assert!(dim <= MAX_SAMPLING_DIM, "sampling supports d <= {MAX_SAMPLING_DIM}");
        let index = WeightedIndex::new(measure.weights_f64()).expect("cone measure weights are positive");
        let mut simplex_coords = Vec::with_capacity(shape.num_simplices() * dim * dim);
        for i in 0..shape.num_simplices() {
            for &v in shape.simplex_vertices(i) {
                simplex_coords.extend(shape.vertices()[v].coords().iter().map(|&x| x as f64));
            }
        }
        Self {
            dim,
            index,
            simplex_coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Writes a sample into `out` and returns the simplex it came from.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) -> usize {
        let d = self.dim;
        let s = self.index.sample(rng);
        let verts = &self.simplex_coords[s * d * d..(s + 1) * d * d];
        out.iter_mut().for_each(|x| *x = 0.0);
        if d == 1 {
            out[0] = verts[0];
            return s;
        }
        let mut bary = [0.0f64; MAX_SAMPLING_DIM];
        let bary = &mut bary[..d];
        let mut total = 0.0;
        for b in bary.iter_mut() {
            let e: f64 = Exp1.sample(rng);
            *b = e;
            total += e;
        }
        for (k, b) in bary.iter().enumerate() {
            let w = b / total;
            for (o, v) in out.iter_mut().zip(&verts[k * d..(k + 1) * d]) {
                *o += w * v;
            }
        }
        s
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.sample_into(rng, &mut out);
        out
    }
}

/// One sample of the cone measure.
pub fn sample_cone_measure<R: Rng + ?Sized>(measure: &ConeMeasure, shape: &LimitShape, rng: &mut R) -> Vec<f64> {
    ConeSampler::new(shape, measure).sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::build_hull;
    use crate::lattice::GeneratorSet;
    use crate::presets::{preset, PRESET_NAMES};
    use num::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn weights_sum_to_one() {
        for name in PRESET_NAMES {
            let shape = build_hull(&preset(name).unwrap()).unwrap();
            assert!(cone_measure(&shape).total().is_one(), "{name}");
        }
    }

    #[test]
    fn square_sides_equal() {
        let shape = build_hull(&preset("std-d2").unwrap()).unwrap();
        let m = cone_measure(&shape);
        assert!(m.facet_weights().iter().all(|w| *w == r(1, 4)));
    }

    #[test]
    fn knight_sides_ratio_four_to_three() {
        let shape = build_hull(&preset("chess-knight").unwrap()).unwrap();
        let fw = cone_measure(&shape).facet_weights();
        for (f, w) in shape.facets().iter().zip(&fw) {
            let n = f.normal().coords();
            let axis = n[0] == 0 || n[1] == 0;
            assert_eq!(*w, if axis { r(1, 7) } else { r(3, 28) });
        }
        assert_eq!(fw.iter().filter(|w| **w == r(1, 7)).count(), 4);
    }

    #[test]
    fn line_atoms_half() {
        let gens = GeneratorSet::from_rows(1, &[&[2], &[5]], true).unwrap();
        let shape = build_hull(&gens).unwrap();
        let m = cone_measure(&shape);
        assert_eq!(m.weights(), &[r(1, 2), r(1, 2)]);
    }

    #[test]
    fn samples_lie_on_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in PRESET_NAMES {
            let shape = build_hull(&preset(name).unwrap()).unwrap();
            let sampler = ConeSampler::new(&shape, &cone_measure(&shape));
            for _ in 0..2000 {
                let x = sampler.sample(&mut rng);
                assert!((shape.norm_f64(&x) - 1.0).abs() <= 1e-12, "{name}: {x:?}");
            }
        }
    }

    #[test]
    fn knight_frequencies_match_measure() {
        let shape = build_hull(&preset("chess-knight").unwrap()).unwrap();
        let m = cone_measure(&shape);
        let sampler = ConeSampler::new(&shape, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let mut counts = vec![0u64; shape.facets().len()];
        let mut x = [0.0; 2];
        for _ in 0..n {
            let s = sampler.sample_into(&mut rng, &mut x);
            counts[shape.simplex_facet(s)] += 1;
        }
        for (c, w) in counts.iter().zip(m.facet_weights()) {
            let p = rational_to_f64(&w);
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((*c as f64 / n as f64 - p).abs() <= 4.0 * sigma);
        }
    }

    #[test]
    fn line_sampling_balanced() {
        let gens = GeneratorSet::from_rows(1, &[&[1], &[3]], true).unwrap();
        let shape = build_hull(&gens).unwrap();
        let sampler = ConeSampler::new(&shape, &cone_measure(&shape));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20_000;
        let plus = (0..n).filter(|_| sampler.sample(&mut rng)[0] == 3.0).count();
        let sigma = (0.25 / n as f64).sqrt();
        assert!((plus as f64 / n as f64 - 0.5).abs() <= 4.0 * sigma);
    }
}
