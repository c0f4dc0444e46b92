//! JSON generating-set files.
//!
//! ```json
//! { "dim": 2, "generators": [[2, 1], [1, 2]], "symmetrize": true }
//! ```
//!
//! With `symmetrize` (default `false`) the negatives are added before the
//! set is validated.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{GeneratorSet, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub dim: usize,
    pub generators: Vec<LatticeVector>,
    #[serde(default)]
    pub symmetrize: bool,
}

impl GeneratorConfig {
    pub fn into_generators(self) -> Result<GeneratorSet> {
        if self.symmetrize {
            GeneratorSet::symmetrized(self.dim, self.generators)
        } else {
            GeneratorSet::new(self.dim, self.generators)
        }
    }
}

impl From<&GeneratorSet> for GeneratorConfig {
    fn from(g: &GeneratorSet) -> Self {
        Self {
            dim: g.dim(),
            generators: g.vectors().to_vec(),
            symmetrize: false,
        }
    }
}

pub fn parse_generators(json: &str) -> Result<GeneratorSet> {
    serde_json::from_str::<GeneratorConfig>(json)?.into_generators()
}

pub fn load_generators(path: &Path) -> Result<GeneratorSet> {
    parse_generators(&std::fs::read_to_string(path)?)
}
