//! Λ-weighted sums over prime ideals, linear sums `A_d(X)` and the bilinear demo.

use super::record::RecordRow;
use super::sieve::{primes_in, simple_sieve};
use super::{chunks, par_map, Kahan};
use crate::arith::{isqrt, prime_power};
use crate::error::{invalid, Error, Result};
use crate::represent::represent_prime;
use crate::ring::{domain_a_max, enumerate_domain, enumerate_domain_range, DomainPoint, QuadInt};
use crate::symbols::{ideal_spin, spin, Char16, GaussInt};

const CHUNK: u64 = 1 << 16;

/// Largest `M` or `N` accepted by [`bilinear_demo`].
pub const MAX_BILINEAR: u64 = 10_000;

/// `Λ(n)`: `log N(𝔭)` when `n = 𝔭^k`, else `0`.
pub fn ideal_lambda(n: DomainPoint) -> f64 {
    let norm = n.norm();
    let Some((p, j)) = prime_power(norm) else {
        return 0.0;
    };
    let lp = (p as f64).ln();
    match p % 8 {
        _ if p == 2 => lp,
        3 | 5 => 2.0 * lp,
        _ => {
            let w = n.w();
            let pi = p as i64;
            // p | n means both primes above p divide n
            if j > 1 && w.a % pi == 0 && w.b % pi == 0 {
                0.0
            } else {
                lp
            }
        }
    }
}

/// Prime-power ideals of norm `≤ x` lying over the rational prime `p`, with `Λ`.
fn ideals_over(p: u64, x: u64, out: &mut Vec<(DomainPoint, f64)>) -> Result<()> {
    let lp = (p as f64).ln();
    let mut push_powers = |g: DomainPoint, step: u64, lam: f64| -> Result<()> {
        let mut n = g;
        let mut norm = step;
        while norm <= x {
            out.push((n, lam));
            norm = match norm.checked_mul(step) {
                Some(v) => v,
                None => break,
            };
            if norm <= x {
                n = n.ideal_mul(g)?;
            }
        }
        Ok(())
    };
    if p == 2 {
        push_powers(DomainPoint::new(QuadInt::new(2, 1))?, 2, lp)
    } else if matches!(p % 8, 1 | 7) {
        let w = represent_prime(p as i64)?;
        push_powers(w, p, lp)?;
        push_powers(w.conj(), p, lp)
    } else {
        match p.checked_mul(p) {
            Some(q2) if q2 <= x => push_powers(DomainPoint::new(QuadInt::new(p as i64, 0))?, q2, 2.0 * lp),
            _ => Ok(()),
        }
    }
}

/// Every prime-power ideal of norm `≤ x` with its `Λ`, grouped by rational prime.
pub fn prime_power_ideals(x: u64) -> Result<Vec<(DomainPoint, f64)>> {
    let mut out = Vec::new();
    for p in super::sieve::sieve(x) {
        ideals_over(p, x, &mut out)?;
    }
    Ok(out)
}

/// `(spin, u)` for the translates `ε^{2k} w`, `k = 0..3`, and `-N(w) mod 16`.
fn translate_data(w: QuadInt) -> Result<([(i64, i64); 4], i64)> {
    let mut out = [(0, 0); 4];
    let mut x = w;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = (spin(x)?.value() as i64, x.a);
        if k < 3 {
            x = x.mul_eps2()?;
        }
    }
    let neg_norm = (-(w.norm_i128()?)).rem_euclid(16) as i64;
    Ok((out, neg_norm))
}

fn spin_from_data(data: &([(i64, i64); 4], i64), phi: Char16, psi: Char16) -> GaussInt {
    let (tr, neg_norm) = data;
    let f = phi.eval(*neg_norm);
    tr.iter()
        .filter(|(s, _)| *s != 0)
        .map(|&(s, u)| GaussInt::new(s, 0) * f * psi.eval(u))
        .sum()
}

/// `S_{φ,ψ}(x)` for several character pairs in one pass over the primes.
/// Returns the sums and the number of prime-power ideals visited.
fn weighted_sums(pairs: &[(Char16, Char16)], x: u64) -> Result<(Vec<(f64, f64)>, u64)> {
    if x < 2 {
        return Ok((vec![(0.0, 0.0); pairs.len()], 0));
    }
    let base = simple_sieve(isqrt(x));
    let ranges = chunks(2, x, CHUNK);
    let parts = par_map(&ranges, |lo, hi| -> Result<(Vec<(Kahan, Kahan)>, u64)> {
        let mut acc = vec![(Kahan::default(), Kahan::default()); pairs.len()];
        let mut ideals = Vec::new();
        for p in primes_in(lo, hi, &base) {
            ideals_over(p, x, &mut ideals)?;
        }
        for &(n, lam) in &ideals {
            let data = translate_data(n.w())?;
            for (slot, &(phi, psi)) in acc.iter_mut().zip(pairs) {
                let v = spin_from_data(&data, phi, psi);
                if !v.is_zero() {
                    slot.0.add(v.re as f64 * lam);
                    slot.1.add(v.im as f64 * lam);
                }
            }
        }
        Ok((acc, ideals.len() as u64))
    });
    let mut total = vec![(Kahan::default(), Kahan::default()); pairs.len()];
    let mut count = 0;
    for part in parts {
        let (acc, n) = part?;
        count += n;
        for (t, a) in total.iter_mut().zip(acc) {
            t.0.merge(a.0);
            t.1.merge(a.1);
        }
    }
    Ok((total.into_iter().map(|(r, i)| (r.value(), i.value())).collect(), count))
}

fn weighted_row(x: u64, phi: Char16, psi: Char16, value: (f64, f64), count: u64) -> RecordRow {
    let bound = (x.max(1) as f64).powf(149.0 / 150.0);
    RecordRow::new(x, format!("S[{phi};{psi}]"), count, value, bound)
}

/// `S_{φ,ψ}(X) = Σ_{N(n) ≤ X} a_{φ,ψ,n} Λ(n)`, with `bound = X^{149/150}`.
///
/// Split primes contribute both conjugate ideals and their powers, inert
/// primes `q` the ideals `(q^k)`; the ramified prime only ever meets even
/// generators, where the spin vanishes.
pub fn weighted_prime_sum(phi: Char16, psi: Char16, x: u64) -> Result<RecordRow> {
    let (v, count) = weighted_sums(&[(phi, psi)], x)?;
    Ok(weighted_row(x, phi, psi, v[0], count))
}

/// [`weighted_prime_sum`] for all 64 pairs, `φ` major.
pub fn weighted_prime_sums(x: u64) -> Result<Vec<RecordRow>> {
    let pairs: Vec<(Char16, Char16)> = Char16::all()
        .into_iter()
        .flat_map(|phi| Char16::all().into_iter().map(move |psi| (phi, psi)))
        .collect();
    let (v, count) = weighted_sums(&pairs, x)?;
    Ok(pairs
        .iter()
        .zip(v)
        .map(|(&(phi, psi), val)| weighted_row(x, phi, psi, val, count))
        .collect())
}

/// `Σ_{φ,ψ} a_{φ,ψ,n}` over all 64 character pairs.
///
/// For a prime ideal over `p` this is `64·⟨p⟩` when `p ≡ 15 (mod 16)` and `0`
/// otherwise.
pub fn character_average(n: DomainPoint) -> Result<GaussInt> {
    let data = translate_data(n.w())?;
    Ok(Char16::all()
        .into_iter()
        .flat_map(|phi| Char16::all().into_iter().map(move |psi| (phi, psi)))
        .map(|(phi, psi)| spin_from_data(&data, phi, psi))
        .sum())
}

/// The linear sum `A_d(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearSum {
    pub d: QuadInt,
    pub x: u64,
    pub value: GaussInt,
    /// Ideals of norm `≤ X` divisible by `d`.
    pub count: u64,
    /// `d` has even norm; the sum is `0` by support and was not computed.
    pub even: bool,
}

impl LinearSum {
    /// `X^{5/6}`.
    pub fn envelope(&self) -> f64 {
        (self.x as f64).powf(5.0 / 6.0)
    }

    pub fn row(&self) -> RecordRow {
        let label = if self.even {
            format!("A[{}](X) even d", self.d)
        } else {
            format!("A[{}](X)", self.d)
        };
        RecordRow::new(
            self.x,
            label,
            self.count,
            (self.value.re as f64, self.value.im as f64),
            self.envelope(),
        )
    }
}

/// `A_d(X) = Σ_{N(n) ≤ X, d | n} a_{φ,ψ,n}`.
pub fn linear_sum(d: QuadInt, phi: Char16, psi: Char16, x: u64) -> Result<LinearSum> {
    if x < 1 {
        return Err(invalid("linear sum needs X ≥ 1"));
    }
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut out = LinearSum { d, x, value: GaussInt::ZERO, count: 0, even: false };
    if !d.is_odd() {
        out.even = true;
        return Ok(out);
    }
    let ranges = chunks(1, domain_a_max(x) as u64, 32);
    let parts = par_map(&ranges, |lo, hi| -> Result<(GaussInt, u64)> {
        let mut acc = GaussInt::ZERO;
        let mut n = 0;
        for p in enumerate_domain_range(x, lo as i64, hi as i64)? {
            if d.divides(p.w())? {
                acc += ideal_spin(p, phi, psi)?;
                n += 1;
            }
        }
        Ok((acc, n))
    });
    for part in parts {
        let (v, n) = part?;
        out.value += v;
        out.count += n;
    }
    Ok(out)
}

/// `B(M, N) = Σ_{N(m) ≤ M} Σ_{N(n) ≤ N} Λ(m) a_{mn}` with trivial characters,
/// against the envelope `(M+N)^{1/12} (MN)^{11/12}`.
///
/// The ideal spin vanishes identically unless `ψ = (s, t)` has `t` odd, so this
/// is always `0`; [`bilinear_demo_with`] takes other characters.
pub fn bilinear_demo(m: u64, n: u64) -> Result<RecordRow> {
    bilinear_demo_with(m, n, Char16::TRIVIAL, Char16::TRIVIAL)
}

/// [`bilinear_demo`] for `a = a_{φ,ψ}`. The value is complex in general.
pub fn bilinear_demo_with(m: u64, n: u64, phi: Char16, psi: Char16) -> Result<RecordRow> {
    if m < 1 || n < 1 {
        return Err(invalid("bilinear sum needs M, N ≥ 1"));
    }
    if m > MAX_BILINEAR || n > MAX_BILINEAR {
        return Err(Error::Capability(format!(
            "bilinear sum is brute force; M and N are capped at {MAX_BILINEAR}"
        )));
    }
    let ms: Vec<(DomainPoint, f64)> = enumerate_domain(m)?
        .map(|d| (d, ideal_lambda(d)))
        .filter(|&(_, l)| l > 0.0)
        .collect();
    let ns: Vec<DomainPoint> = enumerate_domain(n)?.collect();
    let ranges = chunks(0, ms.len() as u64, 16);
    let parts = par_map(&ranges, |lo, hi| -> Result<(Kahan, Kahan)> {
        let mut acc = (Kahan::default(), Kahan::default());
        for &(mm, lam) in ms.iter().take((hi + 1) as usize).skip(lo as usize) {
            let mut s = GaussInt::ZERO;
            for &nn in &ns {
                s += ideal_spin(mm.ideal_mul(nn)?, phi, psi)?;
            }
            acc.0.add(lam * s.re as f64);
            acc.1.add(lam * s.im as f64);
        }
        Ok(acc)
    });
    let mut total = (Kahan::default(), Kahan::default());
    for p in parts {
        let (re, im) = p?;
        total.0.merge(re);
        total.1.merge(im);
    }
    let (mf, nf) = (m as f64, n as f64);
    let envelope = (mf + nf).powf(1.0 / 12.0) * (mf * nf).powf(11.0 / 12.0);
    Ok(RecordRow::new(
        m,
        format!("B[{phi};{psi}](M,N) N={n}"),
        (ms.len() * ns.len()) as u64,
        (total.0.value(), total.1.value()),
        envelope,
    ))
}
