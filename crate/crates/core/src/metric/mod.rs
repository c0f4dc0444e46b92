//! Exact word lengths on the Cayley graph of `(Z^d, S)`.

pub mod cache;
pub mod checks;
pub mod oracle;
pub mod spelling;
pub mod table;

pub use checks::{compute_k, geodesic_multiples, hausdorff_gap, tiling_check, verify_norm_bounds, NormBoundReport};
pub use oracle::{word_length_oracle, OracleResult, SpellingOracle};
pub use spelling::{has_simple_spelling, simple_spelling, SimpleSpeller, SpellingWitness};
pub use table::{bfs_ball, bfs_ball_with, MetricConfig, MetricTable, Storage};
