//! The character sum `Σ_{z mod W} γ(w₁, z) γ(w₂, z)` over `Z[√2]/(W)`.

use super::{chunks, par_map};
use crate::arith::{is_square, totient};
use crate::error::{invalid, Error, Result};
use crate::ring::{gcd, QuadInt};
use crate::symbols::jacobi;

/// Largest `W = N(w₁)N(w₂)` brute-forced; the sum has `W²` terms.
pub const MAX_CANCEL_MODULUS: u64 = 4096;

fn check(w: QuadInt) -> Result<u64> {
    if !w.is_totally_positive() || !w.is_primitive() {
        return Err(invalid(format!("{w} must be primitive and totally positive")));
    }
    Ok(w.norm()? as u64)
}

fn modulus(w1: QuadInt, w2: QuadInt) -> Result<u64> {
    let w = check(w1)?
        .checked_mul(check(w2)?)
        .ok_or(Error::Overflow)?;
    if w > MAX_CANCEL_MODULUS {
        return Err(Error::Capability(format!(
            "W = {w} exceeds the brute-force cap {MAX_CANCEL_MODULUS}"
        )));
    }
    Ok(w)
}

/// `(m / n)` for `m = 0..n`.
fn jacobi_table(n: u64) -> Result<Vec<i8>> {
    (0..n as i64).map(|m| jacobi(m, n as i64).map(|s| s.value())).collect()
}

/// `|Σ_{c, d ∈ [0, W)} γ(w₁, c + d√2) γ(w₂, c + d√2)|` by brute force.
pub fn cancellation_lhs(w1: QuadInt, w2: QuadInt) -> Result<u64> {
    let w = modulus(w1, w2)?;
    let (n1, n2) = (w1.norm()? as u64, w2.norm()? as u64);
    let (t1, t2) = (jacobi_table(n1)?, jacobi_table(n2)?);
    // γ(w, c + d√2) = ((ac + 2bd) / N(w))
    let a1 = w1.a.rem_euclid(n1 as i64) as u64;
    let a2 = w2.a.rem_euclid(n2 as i64) as u64;
    let s1 = (2 * w1.b).rem_euclid(n1 as i64) as u64;
    let s2 = (2 * w2.b).rem_euclid(n2 as i64) as u64;
    let ranges = chunks(0, w - 1, 64);
    let total: i64 = par_map(&ranges, |lo, hi| {
        let mut acc = 0i64;
        for c in lo..=hi {
            let mut r1 = a1 * c % n1;
            let mut r2 = a2 * c % n2;
            for _ in 0..w {
                acc += (t1[r1 as usize] * t2[r2 as usize]) as i64;
                r1 += s1;
                if r1 >= n1 {
                    r1 -= n1;
                }
                r2 += s2;
                if r2 >= n2 {
                    r2 -= n2;
                }
            }
        }
        acc
    })
    .into_iter()
    .sum();
    Ok(total.unsigned_abs())
}

/// `W φ(r) φ(W/r)` when `W` and `r = N(gcd(w₁, w̄₂))` are squares, else `0`.
pub fn cancellation_rhs(w1: QuadInt, w2: QuadInt) -> Result<u64> {
    let w = modulus(w1, w2)?;
    let r = gcd(w1, w2.conj())?.norm()?.unsigned_abs();
    if is_square(w) && is_square(r) {
        Ok(w * totient(r) * totient(w / r))
    } else {
        Ok(0)
    }
}

/// Both sides of the cancellation identity, `(lhs, rhs)`.
pub fn cancellation_identity(w1: QuadInt, w2: QuadInt) -> Result<(u64, u64)> {
    Ok((cancellation_lhs(w1, w2)?, cancellation_rhs(w1, w2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::gamma;

    #[test]
    fn worked_cases() {
        let w = QuadInt::new(3, 1);
        assert_eq!(cancellation_identity(w, w).unwrap(), (2058, 2058));
        assert_eq!(cancellation_identity(w, QuadInt::new(5, 1)).unwrap(), (0, 0));
        assert_eq!(cancellation_identity(w, QuadInt::new(3, -1)).unwrap(), (0, 0));
    }

    #[test]
    fn lhs_matches_gamma() {
        let (w1, w2) = (QuadInt::new(3, 1), QuadInt::new(5, 1));
        let mut s = 0i64;
        for c in 0..161 {
            for d in 0..161 {
                let z = QuadInt::new(c, d);
                s += (gamma(w1, z).unwrap() * gamma(w2, z).unwrap()).value() as i64;
            }
        }
        assert_eq!(s.unsigned_abs(), cancellation_lhs(w1, w2).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cancellation_identity(QuadInt::new(3, 0), QuadInt::new(3, 1)).is_err());
        assert!(cancellation_identity(QuadInt::new(2, 1), QuadInt::new(3, 1)).is_err());
        assert!(matches!(
            cancellation_identity(QuadInt::new(9, 1), QuadInt::new(9, 2)),
            Err(Error::Capability(_))
        ));
    }
}
