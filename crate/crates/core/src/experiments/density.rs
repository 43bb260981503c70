//! The density table `ρ(X; 2^k)` and the oscillation sums `Σ e_p`.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::record::RecordRow;
use super::sieve::{primes_in, simple_sieve};
use super::{chunks, par_map};
use crate::arith::isqrt;
use crate::class_oracle::{class_number, ClassNumberTable};
use crate::error::{invalid, Error, Result};
use crate::symbols::{governing_symbol, Sign};

const CHUNK: u64 = 1 << 18;
const BATCH: usize = 8;

/// Settings for [`density_table_with`].
#[derive(Debug, Clone, Default)]
pub struct DensityOptions {
    /// Compute `h(-8p)` for every `p ≡ 15 (mod 16)`; needed for `k > 4`.
    pub use_oracle: bool,
    /// File of finished chunks; an interrupted run picks up from it.
    pub checkpoint: Option<PathBuf>,
    /// Report progress on stderr.
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
struct Tally {
    primes: u64,
    hits: [u64; 6],
    mismatches: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CheckpointLine {
    x: u64,
    kmax: u32,
    oracle: bool,
    chunk: usize,
    tally: Tally,
}

fn tally_chunk(
    lo: u64,
    hi: u64,
    base: &[u64],
    kmax: u32,
    table: Option<&ClassNumberTable>,
    oracle: bool,
) -> Result<Tally> {
    let mut t = Tally::default();
    for p in primes_in(lo, hi, base) {
        t.primes += 1;
        if p % 4 != 3 {
            continue;
        }
        t.hits[0] += 1;
        if p % 8 != 7 {
            continue;
        }
        t.hits[1] += 1;
        if p % 16 != 15 {
            continue;
        }
        t.hits[2] += 1;
        if kmax < 4 {
            continue;
        }
        let symbol_says = governing_symbol(p as i64)? == Sign::Plus;
        if !oracle {
            t.hits[3] += symbol_says as u64;
            continue;
        }
        let disc = -8 * p as i64;
        let (_, v2) = match table {
            Some(tab) => tab.class_number(disc)?,
            None => class_number(disc)?,
        };
        for k in 4..=6 {
            t.hits[k - 1] += (v2 >= k as u32) as u64;
        }
        t.mismatches += ((v2 >= 4) != symbol_says) as u64;
    }
    Ok(t)
}

fn load_checkpoint(path: &PathBuf, x: u64, kmax: u32, oracle: bool) -> BTreeMap<usize, Tally> {
    let Ok(f) = File::open(path) else {
        return BTreeMap::new();
    };
    BufReader::new(f)
        .lines()
        .map_while(|l| l.ok())
        .filter_map(|l| serde_json::from_str::<CheckpointLine>(&l).ok())
        .filter(|c| c.x == x && c.kmax == kmax && c.oracle == oracle)
        .map(|c| (c.chunk, c.tally))
        .collect()
}

/// `100·ρ(X; 2^k)` for `k = 1..=kmax`, over the denominator `π(X)`.
pub fn density_table(x: u64, kmax: u32, use_oracle: bool) -> Result<Vec<RecordRow>> {
    density_table_with(
        x,
        kmax,
        &DensityOptions {
            use_oracle,
            ..DensityOptions::default()
        },
    )
}

/// [`density_table`] with progress reporting and resumable checkpoints.
///
/// Rows carry the percentage as `value_re`, the numerator as `count`, and
/// `bound = 100`, so `ratio` is the density itself. `k = 1, 2, 3` come from the
/// congruences `p ≡ 3 (4)`, `7 (8)`, `15 (16)`; `k = 4` from the governing
/// symbol, or from `h(-8p)` under the oracle, which also supplies `k = 5, 6`
/// and fails the run if it ever disagrees with the symbol.
pub fn density_table_with(x: u64, kmax: u32, opts: &DensityOptions) -> Result<Vec<RecordRow>> {
    if x < 100 {
        return Err(invalid("density table needs X ≥ 100"));
    }
    if !(1..=6).contains(&kmax) {
        return Err(invalid(format!("kmax must be in 1..=6, got {kmax}")));
    }
    if kmax > 4 && !opts.use_oracle {
        return Err(Error::Capability(
            "k > 4 needs the class-number oracle (--oracle)".into(),
        ));
    }
    let oracle = opts.use_oracle && kmax >= 4;
    let table = if oracle {
        ClassNumberTable::new(8 * x).ok()
    } else {
        None
    };
    let base = simple_sieve(isqrt(x));
    let ranges = chunks(2, x, CHUNK);
    let mut done = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, x, kmax, oracle),
        None => BTreeMap::new(),
    };
    let mut sink = match &opts.checkpoint {
        Some(path) => Some(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| invalid(format!("checkpoint {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let todo: Vec<usize> = (0..ranges.len()).filter(|i| !done.contains_key(i)).collect();
    for batch in todo.chunks(BATCH) {
        let part: Vec<(u64, u64)> = batch.iter().map(|&i| ranges[i]).collect();
        let tallies = par_map(&part, |lo, hi| {
            tally_chunk(lo, hi, &base, kmax, table.as_ref(), oracle)
        });
        for (&i, t) in batch.iter().zip(tallies) {
            let t = t?;
            if let Some(f) = sink.as_mut() {
                let line = CheckpointLine { x, kmax, oracle, chunk: i, tally: t };
                let json = serde_json::to_string(&line).expect("tally serializes");
                writeln!(f, "{json}").map_err(|e| invalid(format!("checkpoint: {e}")))?;
            }
            done.insert(i, t);
        }
        if let Some(f) = sink.as_mut() {
            f.flush().map_err(|e| invalid(format!("checkpoint: {e}")))?;
        }
        if opts.progress {
            eprintln!("density: {}/{} chunks", done.len(), ranges.len());
        }
    }

    let mut total = Tally::default();
    for t in done.values() {
        total.primes += t.primes;
        total.mismatches += t.mismatches;
        for k in 0..6 {
            total.hits[k] += t.hits[k];
        }
    }
    if total.mismatches > 0 {
        return Err(Error::Verification(format!(
            "{} primes where the governing symbol and h(-8p) disagree",
            total.mismatches
        )));
    }
    Ok((1..=kmax as usize)
        .map(|k| {
            let hits = total.hits[k - 1];
            let pct = 100.0 * hits as f64 / total.primes as f64;
            RecordRow::new(x, format!("k={k}"), hits, (pct, 0.0), 100.0)
        })
        .collect())
}

/// Partial sums of `e_p = ⟨p⟩` over primes `p ≡ 15 (mod 16)`, `p ≤ x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OscillationPoint {
    pub x: u64,
    /// `π(x)`.
    pub primes: u64,
    /// Primes `≡ 15 (mod 16)` up to `x`.
    pub count: u64,
    pub plus: u64,
    pub minus: u64,
    pub sum: i64,
}

impl OscillationPoint {
    /// `x^{199/200}`.
    pub fn bound(&self) -> f64 {
        (self.x as f64).powf(199.0 / 200.0)
    }

    /// `|S| / √π(x)`.
    pub fn sqrt_pi_ratio(&self) -> f64 {
        if self.primes == 0 {
            0.0
        } else {
            self.sum.unsigned_abs() as f64 / (self.primes as f64).sqrt()
        }
    }

    pub fn rows(&self) -> [RecordRow; 2] {
        let s = (self.sum as f64, 0.0);
        [
            RecordRow::new(self.x, "S(X)", self.count, s, self.bound()),
            RecordRow::new(self.x, "S(X)/sqrt(pi(X))", self.primes, s, (self.primes as f64).sqrt()),
        ]
    }
}

/// `10², 10³, …` below `x`, then `x` itself.
pub fn geometric_checkpoints(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 100u64;
    while c < x {
        out.push(c);
        c = match c.checked_mul(10) {
            Some(n) => n,
            None => break,
        };
    }
    out.push(x);
    out
}

/// Oscillation sums at each checkpoint.
pub fn oscillation_points(x: u64, checkpoints: &[u64]) -> Result<Vec<OscillationPoint>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid("checkpoints must be ascending"));
    }
    if checkpoints.last().is_some_and(|&c| c > x) {
        return Err(invalid("checkpoints must not exceed X"));
    }
    let base = simple_sieve(isqrt(x));
    let ranges = chunks(2, x, CHUNK);
    let parts = par_map(&ranges, |lo, hi| -> Result<Vec<(u64, i8)>> {
        primes_in(lo, hi, &base)
            .into_iter()
            .map(|p| {
                let e = if p % 16 == 15 {
                    governing_symbol(p as i64)?.value()
                } else {
                    0
                };
                Ok((p, e))
            })
            .collect()
    });

    let mut out = Vec::with_capacity(checkpoints.len());
    let mut cur = OscillationPoint { x: 0, primes: 0, count: 0, plus: 0, minus: 0, sum: 0 };
    let mut next = 0;
    for part in parts {
        for (p, e) in part? {
            while next < checkpoints.len() && checkpoints[next] < p {
                out.push(OscillationPoint { x: checkpoints[next], ..cur });
                next += 1;
            }
            cur.primes += 1;
            if p % 16 == 15 {
                cur.count += 1;
                match e {
                    1 => cur.plus += 1,
                    -1 => cur.minus += 1,
                    _ => {}
                }
                cur.sum += e as i64;
            }
        }
    }
    while next < checkpoints.len() {
        out.push(OscillationPoint { x: checkpoints[next], ..cur });
        next += 1;
    }
    Ok(out)
}

/// Two rows per checkpoint: `S(X)` against `X^{199/200}`, and `S(X)` against `√π(X)`.
pub fn oscillation(x: u64, checkpoints: &[u64]) -> Result<Vec<RecordRow>> {
    Ok(oscillation_points(x, checkpoints)?
        .iter()
        .flat_map(|p| p.rows())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_oracle::rk16_oracle;

    #[test]
    fn small_oscillation() {
        let pts = oscillation_points(130, &[30, 130]).unwrap();
        assert_eq!(pts[0].sum, 0);
        assert_eq!(pts[0].count, 0);
        let p = pts[1];
        assert_eq!((p.count, p.sum, p.plus, p.minus), (4, -2, 1, 3));
        // the same values from the class-number oracle
        let s: i64 = [31i64, 47, 79, 127]
            .iter()
            .map(|&q| if rk16_oracle(q).unwrap() { 1 } else { -1 })
            .sum();
        assert_eq!(s, -2);
        assert_eq!(p.primes, 31);
        assert!(oscillation_points(100, &[50, 40]).is_err());
        assert!(oscillation_points(100, &[200]).is_err());
    }

    #[test]
    fn oscillation_counts_partition() {
        for p in oscillation_points(200_000, &geometric_checkpoints(200_000)).unwrap() {
            assert_eq!(p.plus + p.minus, p.count);
            assert_eq!(p.plus as i64 - p.minus as i64, p.sum);
        }
    }

    #[test]
    fn small_density() {
        let rows = density_table(1000, 3, false).unwrap();
        assert_eq!(rows[0].count, 87);
        assert!((rows[0].value_re - 100.0 * 87.0 / 168.0).abs() < 1e-12);
        assert_eq!(
            density_table(1000, 5, false),
            Err(Error::Capability("k > 4 needs the class-number oracle (--oracle)".into()))
        );
        assert!(density_table(50, 2, false).is_err());
    }

    #[test]
    fn oracle_agrees_with_symbol() {
        let a = density_table(100_000, 4, false).unwrap();
        let b = density_table(100_000, 6, true).unwrap();
        for k in 0..4 {
            assert_eq!(a[k].count, b[k].count);
        }
        assert!(b[5].count <= b[4].count && b[4].count <= b[3].count);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("govsym-ckpt-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let opts = DensityOptions {
            use_oracle: true,
            checkpoint: Some(dir.clone()),
            progress: false,
        };
        let first = density_table_with(600_000, 5, &opts).unwrap();
        let lines = std::fs::read_to_string(&dir).unwrap().lines().count();
        assert_eq!(lines, chunks(2, 600_000, CHUNK).len());
        // a second run reads every chunk back and appends nothing
        let second = density_table_with(600_000, 5, &opts).unwrap();
        assert_eq!(first, second);
        assert_eq!(std::fs::read_to_string(&dir).unwrap().lines().count(), lines);
        std::fs::remove_file(&dir).unwrap();
    }
}
