//! On-disk cache of metric tables.
//!
//! Layout, every field a little-endian `i64`:
//!
//! ```text
//! dim, N, r, r * dim generator coordinates,
//! then (dim coordinates, length) records sorted by point until EOF
//! ```
//!
//! Files are named `<sha256 of the generating set>.mtab`. A cached table of
//! radius `N' >= N` satisfies a request for radius `N`.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::lattice::{GeneratorSet, LatticeVector};
use crate::metric::table::{bfs_ball_with, MetricConfig, MetricTable};

pub fn cache_path(dir: &Path, gens: &GeneratorSet) -> PathBuf {
    dir.join(format!("{}.mtab", gens.content_hash()))
}

pub fn write_table<W: Write>(table: &MetricTable, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let gens = table.gens();
    let put = |x: i64, out: &mut BufWriter<W>| out.write_all(&x.to_le_bytes());
    put(gens.dim() as i64, &mut out)?;
    put(table.radius() as i64, &mut out)?;
    put(gens.len() as i64, &mut out)?;
    for v in gens.vectors() {
        for &x in v.coords() {
            put(x, &mut out)?;
        }
    }
    let mut records: Vec<(&[i64], u32)> = table.iter().collect();
    records.sort_unstable();
    for (p, len) in records {
        for &x in p {
            put(x, &mut out)?;
        }
        put(len as i64, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a table written by [`write_table`].
pub fn read_table<R: Read>(input: R, config: &MetricConfig) -> Result<MetricTable> {
    let mut input = BufReader::new(input);
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() % 8 != 0 {
        return Err(Error::CorruptCache("length is not a multiple of 8".into()));
    }
    let words: Vec<i64> = bytes
        .chunks_exact(8)
        .map(|c| i64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    let header_err = || Error::CorruptCache("truncated header".into());
    let dim = usize::try_from(*words.first().ok_or_else(header_err)?)
        .map_err(|_| Error::CorruptCache("negative dimension".into()))?;
    let radius = u32::try_from(*words.get(1).ok_or_else(header_err)?)
        .map_err(|_| Error::CorruptCache("bad radius".into()))?;
    let r = usize::try_from(*words.get(2).ok_or_else(header_err)?)
        .map_err(|_| Error::CorruptCache("bad generator count".into()))?;
    if dim == 0 {
        return Err(Error::CorruptCache("zero dimension".into()));
    }
    let gen_end = 3 + r * dim;
    let gen_words = words.get(3..gen_end).ok_or_else(header_err)?;
    let vectors = gen_words.chunks_exact(dim).map(LatticeVector::from).collect();
    let gens = GeneratorSet::new(dim, vectors)?;
    let body = &words[gen_end..];
    if !body.len().is_multiple_of(dim + 1) {
        return Err(Error::CorruptCache("truncated record".into()));
    }
    let records = body
        .chunks_exact(dim + 1)
        .map(|rec| {
            let len = u32::try_from(rec[dim]).map_err(|_| Error::CorruptCache("bad length".into()))?;
            Ok((rec[..dim].to_vec(), len))
        })
        .collect::<Result<Vec<_>>>()?;
    MetricTable::from_records(&gens, radius, records, config)
}

/// Loads the table for `gens` from `dir` when a cached radius suffices,
/// otherwise computes it and stores it.
pub fn load_or_build(dir: &Path, gens: &GeneratorSet, radius: u32, config: &MetricConfig) -> Result<MetricTable> {
    let path = cache_path(dir, gens);
    if path.exists() {
        let table = read_table(fs::File::open(&path)?, config)?;
        if table.gens() == gens && table.radius() >= radius {
            return Ok(if table.radius() == radius {
                table
            } else {
                restrict(&table, radius, config)?
            });
        }
    }
    let table = bfs_ball_with(gens, radius, config)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    write_table(&table, fs::File::create(&tmp)?)?;
    fs::rename(tmp, &path)?;
    Ok(table)
}

fn restrict(table: &MetricTable, radius: u32, config: &MetricConfig) -> Result<MetricTable> {
    let records = table.ball(radius).map(|(p, n)| (p.to_vec(), n)).collect();
    MetricTable::from_records(table.gens(), radius, records, config)
}
