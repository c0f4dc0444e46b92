//! Named generating sets.

use crate::error::{Error, Result};
use crate::lattice::GeneratorSet;

pub const PRESET_NAMES: [&str; 5] = ["std-d2", "std-d3", "chess-knight", "cube-d3", "six-one-d2"];

/// Looks up a preset by name.
///
/// `cube-d3` is `{±e1±e2±e3}` together with the face centres `±e_i`. The eight
/// corners alone span an index-4 sublattice; the face centres lie on the
/// boundary of the cube, so the hull, cone measure and sprawl are unchanged.
pub fn preset(name: &str) -> Result<GeneratorSet> {
    match name {
        "std-d2" => GeneratorSet::from_rows(2, &[&[1, 0], &[0, 1]], true),
        "std-d3" => GeneratorSet::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], true),
        "chess-knight" => GeneratorSet::from_rows(2, &[&[2, 1], &[1, 2], &[-1, 2], &[-2, 1]], true),
        "cube-d3" => GeneratorSet::from_rows(
            3,
            &[
                &[1, 1, 1],
                &[1, 1, -1],
                &[1, -1, 1],
                &[-1, 1, 1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
            ],
            true,
        ),
        "six-one-d2" => GeneratorSet::from_rows(2, &[&[6, 0], &[1, 0], &[0, 6], &[0, 1]], true),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
