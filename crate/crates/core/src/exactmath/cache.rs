//! On-disk enumeration cache.
//!
//! Both formats store `(a, b, n)` triples sorted by `n` behind a header that
//! records `(lo, hi, version)`:
//!
//! * CSV: first line `#squarefull,<version>,<lo>,<hi>`, then one `a,b,n`
//!   line per number, decimal.
//! * Binary: fixed 24-byte records of three little-endian `u64`s. The first
//!   record is the header `(lo, hi, version)`, each following record is
//!   `(a, b, n)`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::exactmath::{SquarefullRep, SquarefullSet};
use crate::{Error, Result};

pub const CACHE_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheFormat {
    Csv,
    Binary,
}

impl CacheFormat {
    /// `.csv` selects CSV, anything else binary.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => CacheFormat::Csv,
            _ => CacheFormat::Binary,
        }
    }
}

pub fn write_cache(path: &Path, set: &SquarefullSet, format: CacheFormat) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        CacheFormat::Csv => {
            writeln!(w, "#squarefull,{CACHE_VERSION},{},{}", set.lo(), set.hi())?;
            for r in set.reps() {
                writeln!(w, "{},{},{}", r.a, r.b, r.n)?;
            }
        }
        CacheFormat::Binary => {
            for v in [set.lo(), set.hi(), CACHE_VERSION] {
                w.write_all(&v.to_le_bytes())?;
            }
            for r in set.reps() {
                for v in [r.a, r.b, r.n] {
                    w.write_all(&v.to_le_bytes())?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_cache(path: &Path, format: CacheFormat) -> Result<SquarefullSet> {
    let bad = |reason: String| Error::Cache {
        path: path.to_path_buf(),
        reason,
    };
    let file = File::open(path)?;
    let (lo, hi, reps) = match format {
        CacheFormat::Csv => {
            let mut lines = BufReader::new(file).lines();
            let header = lines.next().ok_or_else(|| bad("empty file".into()))??;
            let fields: Vec<&str> = header.split(',').collect();
            if fields.len() != 4 || fields[0] != "#squarefull" {
                return Err(bad(format!("bad header {header:?}")));
            }
            let num = |s: &str| s.trim().parse::<u64>().map_err(|e| bad(format!("{s:?}: {e}")));
            if num(fields[1])? != CACHE_VERSION {
                return Err(bad(format!("unsupported version {}", fields[1])));
            }
            let (lo, hi) = (num(fields[2])?, num(fields[3])?);
            let mut reps = Vec::new();
            for line in lines {
                let line = line?;
                if line.is_empty() {
                    continue;
                }
                let v: Vec<&str> = line.split(',').collect();
                if v.len() != 3 {
                    return Err(bad(format!("bad record {line:?}")));
                }
                reps.push(SquarefullRep {
                    a: num(v[0])?,
                    b: num(v[1])?,
                    n: num(v[2])?,
                });
            }
            (lo, hi, reps)
        }
        CacheFormat::Binary => {
            let mut bytes = Vec::new();
            BufReader::new(file).read_to_end(&mut bytes)?;
            if bytes.len() < 24 || bytes.len() % 24 != 0 {
                return Err(bad(format!("length {} is not a multiple of 24", bytes.len())));
            }
            let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().unwrap());
            if word(2) != CACHE_VERSION {
                return Err(bad(format!("unsupported version {}", word(2))));
            }
            let reps = (1..bytes.len() / 24)
                .map(|k| SquarefullRep {
                    a: word(3 * k),
                    b: word(3 * k + 1),
                    n: word(3 * k + 2),
                })
                .collect();
            (word(0), word(1), reps)
        }
    };
    SquarefullSet::from_reps(lo, hi, reps).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let set = SquarefullSet::enumerate(1000, 200_000).unwrap();
        for (name, fmt) in [("c.csv", CacheFormat::Csv), ("c.bin", CacheFormat::Binary)] {
            let path = dir.path().join(name);
            assert_eq!(CacheFormat::from_path(&path), fmt);
            write_cache(&path, &set, fmt).unwrap();
            assert_eq!(read_cache(&path, fmt).unwrap(), set);
        }
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("small.csv");
        write_cache(&path, &SquarefullSet::enumerate(1, 9).unwrap(), CacheFormat::Csv).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "#squarefull,1,1,9\n1,1,1\n2,1,4\n1,2,8\n3,1,9\n");
    }

    #[test]
    fn corrupt_records_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "#squarefull,1,1,100\n2,1,5\n").unwrap();
        assert!(matches!(read_cache(&path, CacheFormat::Csv), Err(Error::Cache { .. })));
        let path = dir.path().join("bad.bin");
        std::fs::write(&path, [0u8; 30]).unwrap();
        assert!(read_cache(&path, CacheFormat::Binary).is_err());
    }
}
