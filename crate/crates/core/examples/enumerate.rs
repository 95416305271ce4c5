//! Enumerate `n = a²b³` in a range and round-trip it through the cache.

use squarefull::exactmath::{read_cache, write_cache, CacheFormat, SquarefullSet};

fn main() -> squarefull::Result<()> {
    let set = SquarefullSet::enumerate(1, 200)?;
    for r in set.reps() {
        println!("{:>4} = {}²·{}³", r.n, r.a, r.b);
    }

    let dir = std::env::temp_dir();
    for (name, format) in [("squarefull.csv", CacheFormat::Csv), ("squarefull.bin", CacheFormat::Binary)] {
        let path = dir.join(name);
        let big = SquarefullSet::enumerate(1_000_000_000, 2_000_000_000)?;
        write_cache(&path, &big, format)?;
        let back = read_cache(&path, format)?;
        assert_eq!(back.reps(), big.reps());
        println!("{}: {} numbers in [1e9, 2e9]", path.display(), back.reps().len());
        std::fs::remove_file(&path)?;
    }
    Ok(())
}
