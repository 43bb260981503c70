//! Segmented sieve of Eratosthenes.

use crate::arith::isqrt;

const SEGMENT: u64 = 1 << 18;

/// Primes `≤ limit` by the plain sieve.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if let Some(start) = i.checked_mul(i) {
            for j in (start..=n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
}

/// Primes in `[lo, hi]`. `base` must hold every prime `≤ √hi`.
pub fn primes_in(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let lo = lo.max(2);
    if hi < lo {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut composite = vec![false; SEGMENT.min(hi - lo + 1) as usize];
    let mut start = lo;
    loop {
        let end = hi.min(start + SEGMENT - 1);
        let len = (end - start + 1) as usize;
        composite[..len].fill(false);
        for &p in base {
            if p * p > end {
                break;
            }
            let first = (p * p).max(start.div_ceil(p) * p);
            let mut j = first;
            while j <= end {
                composite[(j - start) as usize] = true;
                j += p;
            }
        }
        out.extend(
            composite[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| start + i as u64),
        );
        if end == hi {
            break;
        }
        start = end + 1;
    }
    out
}

/// Ascending stream of the primes `≤ x`, holding one segment at a time.
#[derive(Debug, Clone)]
pub struct Sieve {
    x: u64,
    base: Vec<u64>,
    next_lo: u64,
    buf: Vec<u64>,
    pos: usize,
}

impl Iterator for Sieve {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.pos == self.buf.len() {
            if self.next_lo > self.x {
                return None;
            }
            let hi = self.x.min(self.next_lo + SEGMENT - 1);
            self.buf = primes_in(self.next_lo, hi, &self.base);
            self.pos = 0;
            self.next_lo = hi + 1;
        }
        self.pos += 1;
        Some(self.buf[self.pos - 1])
    }
}

/// All primes `≤ x` in ascending order.
pub fn sieve(x: u64) -> Sieve {
    Sieve {
        x,
        base: simple_sieve(isqrt(x)),
        next_lo: 2,
        buf: Vec::new(),
        pos: 0,
    }
}

/// `π(x)`.
pub fn prime_count(x: u64) -> u64 {
    let base = simple_sieve(isqrt(x));
    let ranges = super::chunks(2, x, SEGMENT * 4);
    super::par_map(&ranges, |a, b| primes_in(a, b, &base).len() as u64)
        .into_iter()
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small() {
        assert_eq!(sieve(10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(sieve(1).count(), 0);
        assert_eq!(sieve(2).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn segmented_matches_simple() {
        let x = 3 * SEGMENT + 12345;
        let a: Vec<u64> = sieve(x).collect();
        assert_eq!(a, simple_sieve(x));
        let base = simple_sieve(1000);
        assert_eq!(
            primes_in(999_000, 1_000_000, &base),
            simple_sieve(1_000_000)
                .into_iter()
                .filter(|&p| p >= 999_000)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn counts() {
        assert_eq!(prime_count(1_000_000), 78_498);
        assert_eq!(simple_sieve(1_000_000).len(), 78_498);
        assert_eq!(prime_count(10_000_000), 664_579);
        assert_eq!(simple_sieve(10_000_000).len(), 664_579);
    }
}
