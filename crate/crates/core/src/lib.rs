//! Geometry of word metrics on `Z^d`.
//!
//! For a finite symmetric generating set `S` of `Z^d` this crate computes the
//! limit shape `L = ∂conv(S)`, its Minkowski norm and cone measure, exact
//! word-length tables by frontier expansion, growth series and their leading
//! coefficients, sphere and ball averages of homogeneous functionals, the
//! density of simple spellings, and the sprawl statistic.
//!
//! ```
//! use wordgeom::{presets, hull::build_hull, metric::bfs_ball};
//!
//! let gens = presets::preset("chess-knight").unwrap();
//! let shape = build_hull(&gens).unwrap();
//! assert_eq!(shape.volume().to_string(), "14");
//! let table = bfs_ball(&gens, 4).unwrap();
//! assert_eq!(table.length(&[2, 2]), Some(4));
//! ```

pub mod asymptotics;
pub mod config;
pub mod counting;
pub mod error;
pub mod export;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod measure;
pub mod metric;
pub mod presets;
pub mod sprawl;
pub mod stats;

pub use error::{Error, Result};
pub use lattice::{GeneratorSet, LatticeVector};

/// Exact arbitrary-precision rational.
pub type Rational = num::BigRational;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2013;
