//! Exhaustive search for the shortest spelling, independent of the
//! breadth-first search.

use crate::error::Result;
use crate::hull::{build_hull, LimitShape};
use crate::lattice::{GeneratorSet, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleResult {
    Length(u32),
    /// No spelling of total weight `<= bound` exists.
    Unreachable(u32),
}

/// Minimizes `Σ|α_i|` over `w = Σ α_i a_i`, one signed coefficient per `±`
/// pair, by depth-first search over coefficient vectors. Branches are cut
/// when the used weight plus `ceil(||residual||_L)` cannot beat the best
/// spelling found so far.
pub struct SpellingOracle {
    dim: usize,
    reps: Vec<Vec<i64>>,
    shape: LimitShape,
}

impl SpellingOracle {
    pub fn new(gens: &GeneratorSet) -> Result<Self> {
        Ok(Self {
            dim: gens.dim(),
            reps: gens
                .pair_representatives()
                .into_iter()
                .map(|v| v.coords().to_vec())
                .collect(),
            shape: build_hull(gens)?,
        })
    }

    pub fn word_length(&self, w: &[i64], bound: u32) -> OracleResult {
        let mut best = bound as i64 + 1;
        let mut residual = w.to_vec();
        self.search(0, &mut residual, 0, &mut best);
        if best <= bound as i64 {
            OracleResult::Length(best as u32)
        } else {
            OracleResult::Unreachable(bound)
        }
    }

    fn lower_bound(&self, residual: &[i64]) -> i64 {
        let (num, den) = self.shape.norm_fraction(residual);
        num::Integer::div_ceil(&num.max(0), &den)
    }

    fn search(&self, i: usize, residual: &mut [i64], used: i64, best: &mut i64) {
        if residual.iter().all(|&x| x == 0) {
            *best = (*best).min(used);
            return;
        }
        if i == self.reps.len() || used + self.lower_bound(residual) >= *best {
            return;
        }
        let a = &self.reps[i];
        if i + 1 == self.reps.len() {
            // last generator: the coefficient is forced
            if let Some(alpha) = exact_multiple(residual, a) {
                *best = (*best).min(used + alpha.abs());
            }
            return;
        }
        let budget = *best - 1 - used;
        for mag in 0..=budget {
            if used + mag >= *best {
                break;
            }
            for sign in [1i64, -1] {
                if mag == 0 && sign < 0 {
                    continue;
                }
                let alpha = sign * mag;
                for k in 0..self.dim {
                    residual[k] -= alpha * a[k];
                }
                self.search(i + 1, residual, used + mag, best);
                for k in 0..self.dim {
                    residual[k] += alpha * a[k];
                }
            }
        }
    }
}

/// `Some(t)` with `r = t a`, if such an integer exists.
fn exact_multiple(r: &[i64], a: &[i64]) -> Option<i64> {
    let k = a.iter().position(|&x| x != 0)?;
    if r[k] % a[k] != 0 {
        return None;
    }
    let t = r[k] / a[k];
    r.iter().zip(a).all(|(&x, &y)| x == t * y).then_some(t)
}

/// One-shot form of [`SpellingOracle::word_length`].
pub fn word_length_oracle(gens: &GeneratorSet, w: &LatticeVector, bound: u32) -> Result<OracleResult> {
    Ok(SpellingOracle::new(gens)?.word_length(w.coords(), bound))
}
