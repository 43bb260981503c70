//! Exact arithmetic in `Z[√2]`.
//!
//! Elements are `a + b√2` with 64-bit coordinates. Every product and norm is
//! formed in 128-bit arithmetic and narrowed with a checked conversion, so an
//! out-of-range result is reported as [`Error::Overflow`] instead of wrapping.
//!
//! The totally positive elements are acted on by the unit `ε² = 3 + 2√2`, and
//! the half-open cone
//!
//! ```text
//! D = { a + b√2 : a > 0, -a < 2b ≤ a }
//! ```
//!
//! meets every orbit exactly once, so each nonzero ideal has a unique generator
//! in `D` ([`DomainPoint`]).

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The element `a + b√2` of `Z[√2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// Nearest integer to `num / den`, ties toward -∞.
fn round_half_down(num: i128, den: i128) -> Result<i128> {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    // ceil((2num - den) / 2den)
    let top = num
        .checked_mul(2)
        .and_then(|t| t.checked_sub(den))
        .ok_or(Error::Overflow)?;
    let den2 = den.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(-((-top).div_euclid(den2)))
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt::new(0, 0);
    pub const ONE: QuadInt = QuadInt::new(1, 0);
    /// Fundamental unit `ε = 1 + √2`.
    pub const EPS: QuadInt = QuadInt::new(1, 1);
    /// `ε⁻¹ = -1 + √2`.
    pub const EPS_INV: QuadInt = QuadInt::new(-1, 1);
    /// `ε² = 3 + 2√2`, generator of the totally positive units.
    pub const EPS2: QuadInt = QuadInt::new(3, 2);

    pub const fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(self) -> Self {
        QuadInt::new(self.a, -self.b)
    }

    pub fn checked_add(self, o: QuadInt) -> Result<QuadInt> {
        Ok(QuadInt::new(
            self.a.checked_add(o.a).ok_or(Error::Overflow)?,
            self.b.checked_add(o.b).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_sub(self, o: QuadInt) -> Result<QuadInt> {
        Ok(QuadInt::new(
            self.a.checked_sub(o.a).ok_or(Error::Overflow)?,
            self.b.checked_sub(o.b).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_neg(self) -> Result<QuadInt> {
        Ok(QuadInt::new(
            self.a.checked_neg().ok_or(Error::Overflow)?,
            self.b.checked_neg().ok_or(Error::Overflow)?,
        ))
    }

    /// `(a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2`.
    pub fn checked_mul(self, o: QuadInt) -> Result<QuadInt> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let bd2 = (b * d).checked_mul(2).ok_or(Error::Overflow)?;
        let re = (a * c).checked_add(bd2).ok_or(Error::Overflow)?;
        let im = (a * d).checked_add(b * c).ok_or(Error::Overflow)?;
        Ok(QuadInt::new(narrow(re)?, narrow(im)?))
    }

    pub(crate) fn norm_i128(self) -> Result<i128> {
        let (a, b) = (self.a as i128, self.b as i128);
        (b * b)
            .checked_mul(2)
            .and_then(|bb| (a * a).checked_sub(bb))
            .ok_or(Error::Overflow)
    }

    /// `a² - 2b²`; negative for elements with one negative embedding.
    pub fn norm(self) -> Result<i64> {
        narrow(self.norm_i128()?)
    }

    /// Both real embeddings positive: `a > 0` and `a² - 2b² > 0`.
    pub fn is_totally_positive(self) -> bool {
        self.a > 0 && self.norm_i128().map(|n| n > 0).unwrap_or(false)
    }

    /// Odd means the norm is odd, equivalently `a` is odd.
    pub fn is_odd(self) -> bool {
        self.a & 1 == 1
    }

    /// Odd norm and `gcd(a, b) = 1`: not divisible by any rational prime and
    /// coprime to its conjugate.
    pub fn is_primitive(self) -> bool {
        self.is_odd() && num_integer::gcd(self.a, self.b).abs() == 1
    }

    pub fn in_domain(self) -> bool {
        let twice_b = 2 * self.b as i128;
        self.a > 0 && -(self.a as i128) < twice_b && twice_b <= self.a as i128
    }

    /// `ε² · w = (3a + 4b) + (2a + 3b)√2`.
    pub fn mul_eps2(self) -> Result<QuadInt> {
        let (a, b) = (self.a as i128, self.b as i128);
        Ok(QuadInt::new(narrow(3 * a + 4 * b)?, narrow(2 * a + 3 * b)?))
    }

    /// `ε⁻² · w = (3a - 4b) + (-2a + 3b)√2`.
    pub fn div_eps2(self) -> Result<QuadInt> {
        let (a, b) = (self.a as i128, self.b as i128);
        Ok(QuadInt::new(narrow(3 * a - 4 * b)?, narrow(3 * b - 2 * a)?))
    }

    /// `ε^k · w` by repeated multiplication with `ε` or `ε⁻¹`.
    pub fn unit_times(self, k: i64) -> Result<QuadInt> {
        let step = if k >= 0 { QuadInt::EPS } else { QuadInt::EPS_INV };
        let mut w = self;
        for _ in 0..k.unsigned_abs() {
            w = w.checked_mul(step)?;
        }
        Ok(w)
    }

    pub fn checked_pow(self, mut e: u32) -> Result<QuadInt> {
        let mut acc = QuadInt::ONE;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }

    /// Division with remainder: `w = q·d + r`, `|N(r)| < |N(d)|`.
    ///
    /// `q` rounds both coordinates of `w·conj(d) / N(d)` to the nearest
    /// integer, ties toward -∞.
    pub fn euclid_divmod(self, d: QuadInt) -> Result<(QuadInt, QuadInt)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm_i128()?;
        let (a, b, c, e) = (self.a as i128, self.b as i128, d.a as i128, d.b as i128);
        // w · conj(d) = (ac - 2be) + (bc - ae)√2
        let x = (a * c).checked_sub((b * e).checked_mul(2).ok_or(Error::Overflow)?);
        let y = (b * c).checked_sub(a * e);
        let (x, y) = (x.ok_or(Error::Overflow)?, y.ok_or(Error::Overflow)?);
        let q = QuadInt::new(narrow(round_half_down(x, n)?)?, narrow(round_half_down(y, n)?)?);
        let r = self.checked_sub(q.checked_mul(d)?)?;
        Ok((q, r))
    }

    /// Exact divisibility `self | w`.
    pub fn divides(self, w: QuadInt) -> Result<bool> {
        if self.is_zero() {
            return Ok(w.is_zero());
        }
        let n = self.norm_i128()?;
        let (a, b, c, e) = (w.a as i128, w.b as i128, self.a as i128, self.b as i128);
        let x = (a * c).checked_sub((b * e).checked_mul(2).ok_or(Error::Overflow)?);
        let y = (b * c).checked_sub(a * e);
        let (x, y) = (x.ok_or(Error::Overflow)?, y.ok_or(Error::Overflow)?);
        Ok(x % n == 0 && y % n == 0)
    }

    /// The unique `ε^{2k}·w` lying in `D`, together with `k`.
    pub fn reduce_to_domain(self) -> Result<(DomainPoint, i64)> {
        if !self.is_totally_positive() {
            return Err(invalid(format!("{self} is not totally positive")));
        }
        let mut w = self;
        let mut k = 0i64;
        loop {
            let twice_b = 2 * w.b as i128;
            if twice_b > w.a as i128 {
                w = w.div_eps2()?;
                k -= 1;
            } else if twice_b <= -(w.a as i128) {
                w = w.mul_eps2()?;
                k += 1;
            } else {
                return Ok((DomainPoint(w), k));
            }
        }
    }

    /// Coordinates reduced into `[0, m)`.
    pub fn residue(self, m: i64) -> (i64, i64) {
        (self.a.rem_euclid(m), self.b.rem_euclid(m))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}√2", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}√2", self.a, self.b)
        }
    }
}

impl std::str::FromStr for QuadInt {
    type Err = Error;

    /// Parses `"a,b"` as `a + b√2`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| invalid(format!("expected a,b but got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| invalid(format!("bad integer {t:?}")))
        };
        Ok(QuadInt::new(parse(a)?, parse(b)?))
    }
}

/// Sends a nonzero element to its canonical associate.
///
/// Negative norm: multiply by `ε` once. Negative first coordinate: negate.
/// The result is then totally positive and is reduced into `D`.
pub fn canonical_associate(w: QuadInt) -> Result<QuadInt> {
    if w.is_zero() {
        return Err(invalid("zero has no canonical associate"));
    }
    let mut w = w;
    if w.norm_i128()? < 0 {
        w = w.checked_mul(QuadInt::EPS)?;
    }
    if w.a < 0 {
        w = w.checked_neg()?;
    }
    Ok(w.reduce_to_domain()?.0.into_inner())
}

/// Generator of the ideal `(w, z)`, normalized by [`canonical_associate`].
pub fn gcd(w: QuadInt, z: QuadInt) -> Result<QuadInt> {
    if w.is_zero() && z.is_zero() {
        return Err(invalid("gcd(0, 0) is undefined"));
    }
    let (mut x, mut y) = (w, z);
    while !y.is_zero() {
        let (_, r) = x.euclid_divmod(y)?;
        x = y;
        y = r;
    }
    canonical_associate(x)
}

/// An element of the fundamental domain `D`: `a > 0`, `-a < 2b ≤ a`.
///
/// Each nonzero ideal of `Z[√2]` has exactly one generator of this shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadInt", into = "QuadInt")]
pub struct DomainPoint(QuadInt);

impl DomainPoint {
    pub const ONE: DomainPoint = DomainPoint(QuadInt::ONE);

    pub fn new(w: QuadInt) -> Result<Self> {
        if w.in_domain() {
            Ok(DomainPoint(w))
        } else {
            Err(invalid(format!("{w} is not in the fundamental domain")))
        }
    }

    pub fn w(self) -> QuadInt {
        self.0
    }

    pub fn into_inner(self) -> QuadInt {
        self.0
    }

    /// Norm of the ideal; always positive on `D`.
    pub fn norm(self) -> u64 {
        // a ≥ 2|b| forces a² - 2b² ≥ a²/2 > 0, and it fits since a² < 2^126
        self.0.norm_i128().expect("domain norms fit in i128") as u64
    }

    /// Generator of the product ideal.
    pub fn ideal_mul(self, o: DomainPoint) -> Result<DomainPoint> {
        Ok(self.0.checked_mul(o.0)?.reduce_to_domain()?.0)
    }

    /// Generator of the conjugate ideal.
    pub fn conj(self) -> DomainPoint {
        // conj of a totally positive element stays totally positive
        self.0
            .conj()
            .reduce_to_domain()
            .expect("conjugate of a domain point is totally positive")
            .0
    }
}

impl TryFrom<QuadInt> for DomainPoint {
    type Error = Error;
    fn try_from(w: QuadInt) -> Result<Self> {
        DomainPoint::new(w)
    }
}

impl From<DomainPoint> for QuadInt {
    fn from(d: DomainPoint) -> Self {
        d.0
    }
}

impl fmt::Display for DomainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Smallest `t ≥ 0` with `2t² ≥ n`.
fn ceil_sqrt_half(n: i128) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut t = ((n / 2) as u128).sqrt() as i128;
    while 2 * t * t < n {
        t += 1;
    }
    t as i64
}

/// Lexicographic stream of every `DomainPoint` of norm `≤ X` with first
/// coordinate in a given range.
#[derive(Debug, Clone)]
pub struct DomainIter {
    x: i128,
    a: i64,
    a_end: i64,
    segs: [(i64, i64); 2],
    seg: usize,
    b: i64,
}

impl DomainIter {
    fn load_row(&mut self) {
        let a = self.a;
        let lo = -((a - 1) / 2);
        let hi = a / 2;
        let excess = (a as i128) * (a as i128) - self.x;
        if excess <= 0 {
            self.segs = [(lo, hi), (1, 0)];
        } else {
            let m = ceil_sqrt_half(excess);
            self.segs = [(lo, -m), (m, hi)];
        }
        self.seg = 0;
        self.b = self.segs[0].0;
    }
}

impl Iterator for DomainIter {
    type Item = DomainPoint;

    fn next(&mut self) -> Option<DomainPoint> {
        while self.a <= self.a_end {
            while self.seg < 2 {
                let (_, hi) = self.segs[self.seg];
                if self.b <= hi {
                    let p = DomainPoint(QuadInt::new(self.a, self.b));
                    self.b += 1;
                    return Some(p);
                }
                self.seg += 1;
                if self.seg < 2 {
                    self.b = self.b.max(self.segs[1].0);
                }
            }
            self.a += 1;
            if self.a <= self.a_end {
                self.load_row();
            }
        }
        None
    }
}

/// Largest first coordinate a point of `D` with norm `≤ X` can have.
pub fn domain_a_max(x: u64) -> i64 {
    (2 * x as u128).sqrt() as i64
}

/// Every `DomainPoint` with norm `≤ X`, each exactly once, lexicographic in `(a, b)`.
pub fn enumerate_domain(x: u64) -> Result<DomainIter> {
    enumerate_domain_range(x, 1, domain_a_max(x))
}

/// The part of [`enumerate_domain`] with `a_lo ≤ a ≤ a_hi`, for splitting the
/// enumeration across workers.
pub fn enumerate_domain_range(x: u64, a_lo: i64, a_hi: i64) -> Result<DomainIter> {
    if x < 1 {
        return Err(invalid("enumeration bound must be at least 1"));
    }
    let a_lo = a_lo.max(1);
    let a_hi = a_hi.min(domain_a_max(x));
    let mut it = DomainIter {
        x: x as i128,
        a: a_lo,
        a_end: a_hi,
        segs: [(1, 0), (1, 0)],
        seg: 2,
        b: 0,
    };
    if a_lo <= a_hi {
        it.load_row();
    }
    Ok(it)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn multiplication() {
        assert_eq!(QuadInt::EPS.checked_mul(QuadInt::EPS).unwrap(), q(3, 2));
        assert_eq!(q(15, 7).checked_mul(q(3, 2)).unwrap(), q(73, 51));
        assert_eq!(q(3, 1).checked_mul(q(3, -1)).unwrap(), q(7, 0));
    }

    #[test]
    fn multiplication_overflow_is_reported() {
        let big = q(i64::MAX / 2, 1);
        assert_eq!(big.checked_mul(q(3, 0)), Err(Error::Overflow));
        assert_eq!(q(i64::MAX, i64::MAX).norm(), Err(Error::Overflow));
    }

    #[test]
    fn conjugation() {
        assert_eq!(q(3, 1).conj(), q(3, -1));
        assert_eq!(q(5, 0).conj(), q(5, 0));
        assert_eq!(q(15, 7).conj().conj(), q(15, 7));
    }

    #[test]
    fn norms() {
        assert_eq!(q(15, 7).norm().unwrap(), 127);
        assert_eq!(QuadInt::EPS.norm().unwrap(), -1);
        assert_eq!(q(2, 1).norm().unwrap(), 2);
    }

    #[test]
    fn total_positivity_and_primitivity() {
        assert!(q(15, 7).is_totally_positive());
        assert!(!QuadInt::EPS.is_totally_positive());
        assert!(!q(-15, -7).is_totally_positive());
        assert!(q(15, 7).is_primitive());
        assert!(!q(7, 0).is_primitive());
        assert!(!q(2, 1).is_primitive());
    }

    #[test]
    fn division() {
        assert_eq!(q(7, 0).euclid_divmod(q(3, 1)).unwrap(), (q(3, -1), QuadInt::ZERO));
        assert_eq!(q(5, 0).euclid_divmod(q(5, 0)).unwrap(), (QuadInt::ONE, QuadInt::ZERO));
        assert_eq!(q(1, 1).euclid_divmod(QuadInt::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_remainder_is_small() {
        let (w, d) = (q(10, 3), q(3, 1));
        let (qq, r) = w.euclid_divmod(d).unwrap();
        assert_eq!(w, qq.checked_mul(d).unwrap().checked_add(r).unwrap());
        assert!(r.norm().unwrap().abs() < 7);
        // w·conj(d)/7 = (24 + (-1)√2)/7 has floor/ceil neighbours {3,4} x {-1,0}
        let best = [3, 4]
            .iter()
            .flat_map(|&x| [-1, 0].map(|y| q(x, y)))
            .map(|c| w.checked_sub(c.checked_mul(d).unwrap()).unwrap().norm().unwrap().abs())
            .min()
            .unwrap();
        assert!(best < 7);
    }

    #[test]
    fn rounding_ties_go_down() {
        assert_eq!(round_half_down(1, 2).unwrap(), 0);
        assert_eq!(round_half_down(-1, 2).unwrap(), -1);
        assert_eq!(round_half_down(3, 2).unwrap(), 1);
        assert_eq!(round_half_down(6, 10).unwrap(), 1);
        assert_eq!(round_half_down(5, -10).unwrap(), -1);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(q(3, 1), q(3, -1)).unwrap(), QuadInt::ONE);
        // Bezout witness for the unit ideal, found by search
        let found = (-3..=3).any(|x1| {
            (-3..=3).any(|x2| {
                (-3..=3).any(|y1| {
                    (-3..=3).any(|y2| {
                        let s = q(3, 1)
                            .checked_mul(q(x1, x2))
                            .unwrap()
                            .checked_add(q(3, -1).checked_mul(q(y1, y2)).unwrap())
                            .unwrap();
                        s == QuadInt::ONE
                    })
                })
            })
        });
        assert!(found);
        assert_eq!(gcd(q(7, 0), q(3, 1)).unwrap(), q(3, 1));
        assert_eq!(gcd(q(73, 51), QuadInt::ZERO).unwrap(), q(15, 7));
        assert!(gcd(QuadInt::ZERO, QuadInt::ZERO).is_err());
    }

    #[test]
    fn gcd_negative_norm_is_normalized() {
        // (1+√2)(15+7√2) has norm -127
        let w = q(15, 7).checked_mul(QuadInt::EPS).unwrap();
        assert_eq!(gcd(w, QuadInt::ZERO).unwrap(), q(15, 7));
        assert_eq!(gcd(w.checked_neg().unwrap(), QuadInt::ZERO).unwrap(), q(15, 7));
    }

    #[test]
    fn domain_reduction() {
        let (d, k) = q(15, 7).reduce_to_domain().unwrap();
        assert_eq!((d.w(), k), (q(15, 7), 0));
        let (d, k) = q(73, 51).reduce_to_domain().unwrap();
        assert_eq!((d.w(), k), (q(15, 7), -1));
        // uniqueness of k in a window
        let hits: Vec<i64> = (-3..=3)
            .filter(|&k| q(73, 51).unit_times(2 * k).unwrap().in_domain())
            .collect();
        assert_eq!(hits, vec![-1]);
        let (d, k) = QuadInt::ONE.reduce_to_domain().unwrap();
        assert_eq!((d.w(), k), (QuadInt::ONE, 0));
        assert!(QuadInt::EPS.reduce_to_domain().is_err());
    }

    #[test]
    fn unit_action() {
        assert_eq!(q(15, 7).unit_times(2).unwrap(), q(73, 51));
        assert_eq!(q(15, 7).unit_times(0).unwrap(), q(15, 7));
        assert_eq!(q(73, 51).unit_times(-2).unwrap(), q(15, 7));
        for (u, v) in [(15, 7), (3, -1), (1, 0), (-4, 9)] {
            assert_eq!(
                q(u, v).unit_times(8).unwrap(),
                q(577 * u + 816 * v, 408 * u + 577 * v)
            );
        }
    }

    #[test]
    fn small_enumerations() {
        let one: Vec<_> = enumerate_domain(1).unwrap().map(|d| d.w()).collect();
        assert_eq!(one, vec![q(1, 0)]);
        let two: Vec<_> = enumerate_domain(2).unwrap().map(|d| d.w()).collect();
        assert_eq!(two, vec![q(1, 0), q(2, 1)]);
        assert!(enumerate_domain(0).is_err());
    }

    #[test]
    fn enumeration_matches_scan() {
        let x = 500u64;
        let mut brute = Vec::new();
        for a in 1..=40i64 {
            for b in -40..=40i64 {
                let w = q(a, b);
                if w.in_domain() && w.norm().unwrap() as u64 <= x {
                    brute.push(w);
                }
            }
        }
        let fast: Vec<_> = enumerate_domain(x).unwrap().map(|d| d.w()).collect();
        assert_eq!(brute, fast);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3,-1".parse::<QuadInt>().unwrap(), q(3, -1));
        assert_eq!(q(3, -1).to_string(), "3-1√2");
        assert!("3".parse::<QuadInt>().is_err());
    }
}
