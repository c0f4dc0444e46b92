use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::GeneratorSet;

/// Where word lengths are stored during and after the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Storage {
    /// Dense array for `d <= 3` when the bounding box fits the cell limit,
    /// hash map otherwise.
    #[default]
    Auto,
    Dense,
    Hash,
}

#[derive(Clone, Debug)]
pub struct MetricConfig {
    /// Maximum number of stored points; the search stops with
    /// `CapacityExceeded` beyond it.
    pub max_points: usize,
    /// Maximum number of cells of the dense bounding-box array under `Auto`.
    pub dense_cell_limit: usize,
    pub storage: Storage,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            max_points: 200_000_000,
            dense_cell_limit: 100_000_000,
            storage: Storage::Auto,
        }
    }
}

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug)]
enum LengthIndex {
    Dense {
        half: i64,
        side: usize,
        lengths: Vec<u32>,
    },
    Hash(HashMap<Box<[i64]>, u32>),
}

impl LengthIndex {
    #[inline]
    fn dense_offset(half: i64, side: usize, x: &[i64]) -> Option<usize> {
        let mut off = 0usize;
        for &c in x.iter().rev() {
            if c < -half || c > half {
                return None;
            }
            off = off * side + (c + half) as usize;
        }
        Some(off)
    }

    #[inline]
    fn get(&self, x: &[i64]) -> Option<u32> {
        match self {
            LengthIndex::Dense { half, side, lengths } => {
                let off = Self::dense_offset(*half, *side, x)?;
                let v = lengths[off];
                (v != UNSET).then_some(v)
            }
            LengthIndex::Hash(map) => map.get(x).copied(),
        }
    }

    /// Records `len` for `x` unless already present; returns whether it was new.
    #[inline]
    fn insert_if_absent(&mut self, x: &[i64], len: u32) -> bool {
        match self {
            LengthIndex::Dense { half, side, lengths } => {
                let off = Self::dense_offset(*half, *side, x).expect("ball lies in its bounding box");
                if lengths[off] == UNSET {
                    lengths[off] = len;
                    true
                } else {
                    false
                }
            }
            LengthIndex::Hash(map) => {
                if map.contains_key(x) {
                    false
                } else {
                    map.insert(x.into(), len);
                    true
                }
            }
        }
    }

    fn is_dense(&self) -> bool {
        matches!(self, LengthIndex::Dense { .. })
    }
}

/// Word lengths of every point of the ball `B_N`, grouped by sphere.
///
/// Points are stored flat (`dim` coordinates each), ordered by word length and
/// lexicographically within a sphere.
#[derive(Clone, Debug)]
pub struct MetricTable {
    gens: GeneratorSet,
    radius: u32,
    coords: Vec<i64>,
    offsets: Vec<usize>,
    index: LengthIndex,
}

/// Word lengths on `B_N` by breadth-first frontier expansion, with the default
/// configuration.
pub fn bfs_ball(gens: &GeneratorSet, radius: u32) -> Result<MetricTable> {
    bfs_ball_with(gens, radius, &MetricConfig::default())
}

pub fn bfs_ball_with(gens: &GeneratorSet, radius: u32, config: &MetricConfig) -> Result<MetricTable> {
    let dim = gens.dim();
    let mut index = new_index(gens, radius, config);
    let gen_coords: Vec<i64> = gens.vectors().iter().flat_map(|v| v.coords().to_vec()).collect();

    let mut coords = vec![0i64; dim];
    index.insert_if_absent(&coords, 0);
    let mut offsets = vec![0, 1];
    let mut q = vec![0i64; dim];
    for n in 1..=radius {
        let prev = offsets[n as usize - 1]..offsets[n as usize];
        let mut fresh: Vec<i64> = Vec::new();
        for p in prev {
            let p = &coords[p * dim..(p + 1) * dim];
            for s in gen_coords.chunks_exact(dim) {
                for k in 0..dim {
                    q[k] = p[k] + s[k];
                }
                if index.insert_if_absent(&q, n) {
                    fresh.extend_from_slice(&q);
                }
            }
        }
        let count = fresh.len() / dim;
        let total = coords.len() / dim + count;
        if total > config.max_points {
            return Err(Error::CapacityExceeded {
                requested: radius,
                largest_feasible: n - 1,
                budget: config.max_points,
            });
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_unstable_by(|&a, &b| fresh[a * dim..(a + 1) * dim].cmp(&fresh[b * dim..(b + 1) * dim]));
        coords.reserve(fresh.len());
        for i in order {
            coords.extend_from_slice(&fresh[i * dim..(i + 1) * dim]);
        }
        offsets.push(total);
    }
    Ok(MetricTable {
        gens: gens.clone(),
        radius,
        coords,
        offsets,
        index,
    })
}

fn new_index(gens: &GeneratorSet, radius: u32, config: &MetricConfig) -> LengthIndex {
    let dim = gens.dim();
    let half = radius as i64 * gens.max_abs_coord();
    let side = (2 * half + 1) as usize;
    let cells = (dim <= 3)
        .then(|| side.checked_pow(dim as u32))
        .flatten();
    let dense = match config.storage {
        Storage::Dense => cells.is_some(),
        Storage::Hash => false,
        Storage::Auto => cells.is_some_and(|c| c <= config.dense_cell_limit),
    };
    if dense {
        LengthIndex::Dense {
            half,
            side,
            lengths: vec![UNSET; cells.expect("checked")],
        }
    } else {
        LengthIndex::Hash(HashMap::new())
    }
}

impl MetricTable {
    /// Rebuilds a table from `(point, length)` records covering a full ball.
    pub(crate) fn from_records(
        gens: &GeneratorSet,
        radius: u32,
        mut records: Vec<(Vec<i64>, u32)>,
        config: &MetricConfig,
    ) -> Result<Self> {
        let dim = gens.dim();
        records.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let mut index = new_index(gens, radius, config);
        let mut coords = Vec::with_capacity(records.len() * dim);
        let mut offsets = vec![0usize];
        for (p, len) in &records {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if *len > radius {
                return Err(Error::CorruptCache(format!("length {len} beyond radius {radius}")));
            }
            while offsets.len() <= *len as usize {
                offsets.push(coords.len() / dim);
            }
            if matches!(index, LengthIndex::Dense { half, .. } if p.iter().any(|c| c.abs() > half)) {
                return Err(Error::CorruptCache("point outside the ball".into()));
            }
            if !index.insert_if_absent(p, *len) {
                return Err(Error::CorruptCache("duplicate point".into()));
            }
            coords.extend_from_slice(p);
        }
        while offsets.len() <= radius as usize + 1 {
            offsets.push(coords.len() / dim);
        }
        Ok(Self {
            gens: gens.clone(),
            radius,
            coords,
            offsets,
            index,
        })
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens.dim()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn is_dense(&self) -> bool {
        self.index.is_dense()
    }

    /// Word length of `x`, if `x` lies in the ball.
    #[inline]
    pub fn length(&self, x: &[i64]) -> Option<u32> {
        self.index.get(x)
    }

    pub(crate) fn check_radius(&self, n: u32) -> Result<()> {
        if n > self.radius {
            return Err(Error::RadiusOutOfRange {
                requested: n,
                available: self.radius,
            });
        }
        Ok(())
    }

    /// Flat coordinates of the sphere `S_n`.
    pub fn sphere_coords(&self, n: u32) -> &[i64] {
        let d = self.dim();
        &self.coords[self.offsets[n as usize] * d..self.offsets[n as usize + 1] * d]
    }

    pub fn sphere(&self, n: u32) -> impl ExactSizeIterator<Item = &[i64]> + '_ {
        self.sphere_coords(n).chunks_exact(self.dim())
    }

    /// `σ(n) = #S_n`.
    pub fn sphere_len(&self, n: u32) -> usize {
        self.offsets[n as usize + 1] - self.offsets[n as usize]
    }

    /// `β(n) = #B_n`.
    pub fn ball_len(&self, n: u32) -> usize {
        self.offsets[n as usize + 1]
    }

    /// Every stored point with its length, in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (&[i64], u32)> + '_ {
        (0..=self.radius).flat_map(move |n| self.sphere(n).map(move |p| (p, n)))
    }

    /// Points of the ball `B_n` with their lengths.
    pub fn ball(&self, n: u32) -> impl Iterator<Item = (&[i64], u32)> + '_ {
        (0..=n).flat_map(move |k| self.sphere(k).map(move |p| (p, k)))
    }

    /// Structural equality of the stored ball, ignoring the storage backend.
    pub fn same_contents(&self, other: &MetricTable) -> bool {
        self.gens == other.gens
            && self.radius == other.radius
            && self.offsets == other.offsets
            && self.coords == other.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    #[test]
    fn standard_ball_counts() {
        let t = bfs_ball(&preset("std-d2").unwrap(), 2).unwrap();
        assert_eq!((0..=2).map(|n| t.ball_len(n)).collect::<Vec<_>>(), vec![1, 5, 13]);
        assert_eq!(t.sphere(1).collect::<Vec<_>>(), vec![&[-1, 0][..], &[0, -1], &[0, 1], &[1, 0]]);
    }

    #[test]
    fn knight_lengths() {
        let t = bfs_ball(&preset("chess-knight").unwrap(), 5).unwrap();
        assert_eq!(t.length(&[1, 1]), Some(2));
        assert_eq!(t.length(&[2, 2]), Some(4));
        assert_eq!(t.length(&[2, 1]), Some(1));
        assert_eq!(t.length(&[0, 0]), Some(0));
        assert_eq!(t.length(&[100, 0]), None);
    }

    #[test]
    fn dense_and_hash_agree() {
        for name in ["chess-knight", "std-d3", "six-one-d2"] {
            let gens = preset(name).unwrap();
            let dense = bfs_ball_with(&gens, 12, &MetricConfig { storage: Storage::Dense, ..Default::default() }).unwrap();
            let hash = bfs_ball_with(&gens, 12, &MetricConfig { storage: Storage::Hash, ..Default::default() }).unwrap();
            assert!(dense.is_dense() && !hash.is_dense());
            assert!(dense.same_contents(&hash), "{name}");
            for (p, n) in dense.iter() {
                assert_eq!(hash.length(p), Some(n));
            }
        }
    }

    #[test]
    fn capacity_exceeded_reports_feasible_radius() {
        let gens = preset("std-d2").unwrap();
        let cfg = MetricConfig { max_points: 13, ..Default::default() };
        assert!(bfs_ball_with(&gens, 2, &cfg).is_ok());
        match bfs_ball_with(&gens, 5, &cfg) {
            Err(Error::CapacityExceeded { requested: 5, largest_feasible: 2, budget: 13 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn radius_zero_is_origin() {
        let t = bfs_ball(&preset("std-d3").unwrap(), 0).unwrap();
        assert_eq!(t.ball_len(0), 1);
        assert_eq!(t.length(&[0, 0, 0]), Some(0));
    }

    #[test]
    fn line_spheres() {
        let gens = GeneratorSet::from_rows(1, &[&[1], &[3]], true).unwrap();
        let t = bfs_ball(&gens, 4).unwrap();
        assert_eq!(t.length(&[7]), Some(3));
        assert_eq!(t.length(&[12]), Some(4));
        // 11 = 3+3+3+1+1 needs five letters
        assert_eq!(t.length(&[11]), None);
    }
}
