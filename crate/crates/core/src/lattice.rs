use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg;

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        linalg::dot(&self.0, other)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(v: &[i64]) -> Self {
        Self(v.to_vec())
    }
}

impl std::ops::Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }
}

impl std::ops::Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A finite symmetric generating set of `Z^d`.
///
/// Construction validates every standing assumption: no zero vector, closed
/// under negation, and the generated lattice is all of `Z^d` (the gcd of the
/// maximal minors is 1). Vectors are stored deduplicated in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    dim: usize,
    vectors: Vec<LatticeVector>,
}

impl GeneratorSet {
    pub fn new(dim: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if vectors.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            if v.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let mut vectors = vectors;
        vectors.sort();
        vectors.dedup();
        for v in &vectors {
            if vectors.binary_search(&-v).is_err() {
                return Err(Error::NotSymmetric(v.clone()));
            }
        }
        let rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        match linalg::lattice_index(&rows, dim) {
            None => return Err(Error::NotFullRank { dim }),
            Some(index) if !index.is_one() => {
                return Err(Error::NotGenerating {
                    dim,
                    index: index.to_string(),
                })
            }
            Some(_) => {}
        }
        Ok(Self { dim, vectors })
    }

    /// Adds the negative of every vector before validating.
    pub fn symmetrized(dim: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        let mut all = vectors.clone();
        all.extend(vectors.iter().map(|v| -v));
        Self::new(dim, all)
    }

    pub fn from_rows(dim: usize, rows: &[&[i64]], symmetrize: bool) -> Result<Self> {
        let vectors = rows.iter().map(|r| LatticeVector::from(*r)).collect();
        if symmetrize {
            Self::symmetrized(dim, vectors)
        } else {
            Self::new(dim, vectors)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One vector from each `±` pair: the lexicographically larger one.
    pub fn pair_representatives(&self) -> Vec<&LatticeVector> {
        self.vectors.iter().filter(|v| **v > -*v).collect()
    }

    pub fn max_abs_coord(&self) -> i64 {
        self.vectors
            .iter()
            .flat_map(|v| v.coords().iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }

    /// Applies an integer linear map given by its rows, e.g. a signed permutation.
    pub fn transformed(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        let image = self
            .vectors
            .iter()
            .map(|v| LatticeVector::new(matrix.iter().map(|row| v.dot(row)).collect()))
            .collect();
        Self::new(self.dim, image)
    }

    /// Hex SHA-256 of the canonical (sorted) vector list; used as a cache key.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.dim as u64).to_le_bytes());
        for v in &self.vectors {
            for x in v.coords() {
                hasher.update(x.to_le_bytes());
            }
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
