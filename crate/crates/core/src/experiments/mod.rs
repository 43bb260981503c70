//! Numerical experiments and identity verification suites.
//!
//! Every experiment cuts its range into chunks of a fixed size, runs the
//! chunks on the rayon pool and merges the partial results in chunk order.
//! The output is therefore the same for any number of threads, including the
//! floating point sums.

mod cancellation;
mod davenport;
mod density;
mod record;
mod sieve;
mod sums;
mod verify;

use rayon::prelude::*;

pub use cancellation::{
    cancellation_identity, cancellation_lhs, cancellation_rhs, MAX_CANCEL_MODULUS,
};
pub use davenport::{davenport_check, davenport_count, region_constants, DavenportCount};
pub use density::{
    density_table, density_table_with, geometric_checkpoints, oscillation, oscillation_points,
    DensityOptions, OscillationPoint,
};
pub use record::{read_csv, read_json, write_csv, write_json, RecordRow};
pub use sieve::{prime_count, primes_in, sieve, simple_sieve, Sieve};
pub use sums::{
    bilinear_demo, bilinear_demo_with, character_average, ideal_lambda, linear_sum, prime_power_ideals,
    weighted_prime_sum, weighted_prime_sums, LinearSum, MAX_BILINEAR,
};
pub use verify::{verify_suite, VerifyReport, SUITES};

/// Inclusive ranges `[lo, hi]` of length `size` (the last one shorter).
pub(crate) fn chunks(lo: u64, hi: u64, size: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a.saturating_add(size - 1));
        out.push((a, b));
        if b == u64::MAX {
            break;
        }
        a = b + 1;
    }
    out
}

/// Maps `f` over `ranges` in parallel; results come back in range order.
pub(crate) fn par_map<T, F>(ranges: &[(u64, u64)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    ranges.par_iter().map(|&(a, b)| f(a, b)).collect()
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, o: Kahan) {
        self.add(o.sum);
        self.add(o.comp);
    }

    pub fn value(self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_range() {
        assert_eq!(chunks(2, 10, 4), vec![(2, 5), (6, 9), (10, 10)]);
        assert!(chunks(5, 4, 3).is_empty());
    }

    #[test]
    fn compensated_sum() {
        let mut k = Kahan::default();
        k.add(1e16);
        for _ in 0..1000 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 1000.0);
    }
}
