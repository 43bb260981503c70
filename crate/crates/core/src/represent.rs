//! Solving `p = u² - 2v²` for split primes and choosing a representative in
//! the unit orbit.

use serde::{Deserialize, Serialize};

use crate::arith::mod_pow;
use crate::error::{invalid, Error, Result};
use crate::ring::{gcd, DomainPoint, QuadInt};

/// Square root of `n` modulo an odd prime `p` by Tonelli-Shanks, if one exists.
pub fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if mod_pow(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(n, q, p);
    let mut r = mod_pow(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
            if i >= m {
                return None;
            }
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

/// `t` with `t² ≡ 2 (mod p)`, `0 < t < p`, for an odd prime `p ≡ ±1 (mod 8)`.
pub fn sqrt2_mod(p: i64) -> Result<i64> {
    if p < 3 || p % 2 == 0 {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    let pu = p as u64;
    let t = match pu % 8 {
        7 => mod_pow(2, (pu + 1) / 4, pu),
        1 => sqrt_mod_prime(2, pu).ok_or(Error::NoSquareRoot(p))?,
        _ => return Err(Error::NoSquareRoot(p)),
    };
    // composite moduli can slip through the closed form
    if (t as u128 * t as u128) % pu as u128 != 2 {
        return Err(Error::NoSquareRoot(p));
    }
    Ok(t as i64)
}

/// Canonical generator in `D` of a prime ideal above `p ≡ ±1 (mod 8)`.
///
/// The ideal is `(p, t - √2)` with `t² ≡ 2 (mod p)`; its generator is found
/// by the Euclidean algorithm in `Z[√2]` and then normalized (norm sign,
/// then total positivity, then reduction into `D`). Of the two conjugate prime
/// ideals, the one whose generator has `b > 0` is returned.
pub fn represent_prime(p: i64) -> Result<DomainPoint> {
    if p > 2 && matches!(p.rem_euclid(8), 3 | 5) {
        return Err(Error::InertPrime(p));
    }
    let t = sqrt2_mod(p)?;
    let g = gcd(QuadInt::new(p, 0), QuadInt::new(t, -1))?;
    if g.norm()? != p {
        return Err(invalid(format!("{p} is not prime: found a factor of norm {}", g.norm()?)));
    }
    let d = DomainPoint::new(g)?;
    if d.w().b < 0 {
        DomainPoint::new(d.w().conj())
    } else {
        Ok(d)
    }
}

/// Which representative of the unit orbit to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizeMode {
    /// `ε^{2k} w` with first coordinate `≡ 1 (mod 16)`; needs `N(w) ≡ -1 (mod 16)`.
    U1Mod16,
    /// `(a, ±b)` with `a > 0` and `b ≡ 1 (mod 4)`; needs `b` odd.
    V1Mod4,
}

/// Picks the representative described by `mode`.
///
/// For norms `≡ -1 (mod 16)` the four translates `ε^{2k} w`, `k = 0..3`, run
/// through first coordinates `{1, 7, 9, 15}` mod 16, so exactly one of them
/// qualifies for [`NormalizeMode::U1Mod16`].
pub fn normalize_generator(w: QuadInt, mode: NormalizeMode) -> Result<QuadInt> {
    if !w.is_totally_positive() || !w.is_odd() {
        return Err(invalid(format!("{w} must be totally positive with odd norm")));
    }
    match mode {
        NormalizeMode::U1Mod16 => {
            if w.norm_i128()?.rem_euclid(16) != 15 {
                return Err(invalid(format!("norm of {w} is not ≡ -1 (mod 16)")));
            }
            let mut x = w;
            for _ in 0..4 {
                if x.a.rem_euclid(16) == 1 {
                    return Ok(x);
                }
                x = x.mul_eps2()?;
            }
            Err(invalid(format!("no translate of {w} has u ≡ 1 (mod 16)")))
        }
        NormalizeMode::V1Mod4 => match w.b.rem_euclid(4) {
            1 => Ok(w),
            3 => Ok(w.conj()),
            _ => Err(invalid(format!("{w} has even b"))),
        },
    }
}
