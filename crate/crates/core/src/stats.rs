//! Streaming statistics and deterministic parallel Monte Carlo.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Streaming mean and variance (Welford), mergeable across batches.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count > 1 {
            (self.variance() / self.count as f64).sqrt()
        } else {
            0.0
        }
    }
}

impl Extend<f64> for RunningStats {
    fn extend<T: IntoIterator<Item = f64>>(&mut self, iter: T) {
        for x in iter {
            self.push(x);
        }
    }
}

/// Samples per Monte Carlo batch. Each batch owns its own random stream, so
/// results do not depend on the number of threads.
pub const MC_BATCH: u64 = 1 << 14;

/// Mean of `samples` draws of `f`, split into batches of `batch` draws.
/// Batch `b` uses `ChaCha8Rng` seeded with `seed` on stream `b`; batch
/// statistics are merged in batch order, so the result is bit-reproducible
/// for a fixed `(seed, batch)`.
pub fn parallel_mean<F>(samples: u64, seed: u64, batch: u64, f: F) -> RunningStats
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let batch = batch.max(1);
    let batches = samples.div_ceil(batch);
    let parts: Vec<RunningStats> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let n = batch.min(samples - b * batch);
            let mut st = RunningStats::new();
            for _ in 0..n {
                st.push(f(&mut rng));
            }
            st
        })
        .collect();
    let mut total = RunningStats::new();
    for p in &parts {
        total.merge(p);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut s = RunningStats::new();
        s.extend(xs.iter().copied());
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert!((s.mean() - mean).abs() < 1e-12);
        assert!((s.variance() - var).abs() < 1e-9);
    }

    #[test]
    fn merge_equals_sequential() {
        let xs: Vec<f64> = (0..500).map(|i| (i as f64).sin()).collect();
        let mut all = RunningStats::new();
        all.extend(xs.iter().copied());
        let mut a = RunningStats::new();
        let mut b = RunningStats::new();
        a.extend(xs[..123].iter().copied());
        b.extend(xs[123..].iter().copied());
        a.merge(&b);
        assert_eq!(a.count(), all.count());
        assert!((a.mean() - all.mean()).abs() < 1e-12);
        assert!((a.variance() - all.variance()).abs() < 1e-12);
    }

    #[test]
    fn parallel_mean_is_reproducible() {
        use rand::Rng;
        let f = |rng: &mut ChaCha8Rng| rng.random::<f64>();
        let a = parallel_mean(10_000, 7, 1000, f);
        let b = parallel_mean(10_000, 7, 1000, f);
        assert_eq!(a, b);
        assert_eq!(a.count(), 10_000);
        assert!((a.mean() - 0.5).abs() < 4.0 * a.stderr());
        let c = parallel_mean(10_001, 7, 1000, f);
        assert_eq!(c.count(), 10_001);
    }
}
