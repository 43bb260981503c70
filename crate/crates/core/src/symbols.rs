//! Quadratic-residue and character symbols.
//!
//! Everything here is a pure function of its arguments:
//!
//! - [`jacobi`]: the Jacobi symbol `(m/n)`.
//! - [`spin`]: `[a + b√2] = (b/a)` for odd `a`, `0` otherwise.
//! - [`mu`] and [`gamma`]: the symbols `μ(w) = ((a)/(a² - 2b²))` and
//!   `γ(w, z) = ((ac + 2bd)/(a² - 2b²))`.
//! - [`Char16`]: the eight Dirichlet characters modulo 16.
//! - [`weighted_spin`] / [`ideal_spin`]: the spin symbol twisted by a pair of
//!   characters and summed over four unit translates of a generator.
//! - [`governing_symbol`]: `⟨p⟩` for primes `p ≡ -1 (mod 16)`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::represent::{normalize_generator, represent_prime, NormalizeMode};
use crate::ring::{DomainPoint, QuadInt};

/// A symbol value in `{-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;
    fn try_from(v: i8) -> Result<Sign> {
        match v {
            -1 => Ok(Sign::Minus),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Plus),
            _ => Err(invalid(format!("{v} is not a sign"))),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        match (self, o) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (x, y) if x == y => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Gaussian integer `re + im·i`, the accumulator for character-weighted sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt::new(0, 0);
    pub const ONE: GaussInt = GaussInt::new(1, 0);
    pub const I: GaussInt = GaussInt::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn abs(self) -> f64 {
        (self.re as f64).hypot(self.im as f64)
    }
}

impl From<Sign> for GaussInt {
    fn from(s: Sign) -> Self {
        GaussInt::new(s.value() as i64, 0)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, o: GaussInt) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Sum for GaussInt {
    fn sum<I: Iterator<Item = GaussInt>>(iter: I) -> GaussInt {
        iter.fold(GaussInt::ZERO, Add::add)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, self.im.unsigned_abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Jacobi symbol of an already-reduced numerator; `n` odd.
fn jacobi_reduced(mut a: u64, mut n: u64) -> Sign {
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z & 1 == 1 && matches!(n & 7, 3 | 5) {
            t = -t;
        }
        if a & 3 == 3 && n & 3 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    match (n, t) {
        (1, 1) => Sign::Plus,
        (1, _) => Sign::Minus,
        _ => Sign::Zero,
    }
}

/// The Jacobi symbol `(m/n)` for odd `n > 0`.
pub fn jacobi(m: i64, n: i64) -> Result<Sign> {
    if n <= 0 || n & 1 == 0 {
        return Err(invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}")));
    }
    Ok(jacobi_reduced(m.rem_euclid(n) as u64, n as u64))
}

/// `(m/n)` with a wide numerator.
pub(crate) fn jacobi_wide(m: i128, n: u64) -> Sign {
    debug_assert!(n & 1 == 1);
    jacobi_reduced(m.rem_euclid(n as i128) as u64, n)
}

fn require_totally_positive(w: QuadInt) -> Result<()> {
    if w.is_totally_positive() {
        Ok(())
    } else {
        Err(invalid(format!("{w} is not totally positive")))
    }
}

/// Spin symbol `[a + b√2]`: `(b/a)` when `a` is odd, else `0`.
pub fn spin(w: QuadInt) -> Result<Sign> {
    require_totally_positive(w)?;
    Ok(spin_unchecked(w))
}

#[inline]
fn spin_unchecked(w: QuadInt) -> Sign {
    if w.a & 1 == 0 {
        Sign::Zero
    } else {
        jacobi_reduced(w.b.rem_euclid(w.a) as u64, w.a as u64)
    }
}

/// `μ(w) = (a / (a² - 2b²))`; nonzero exactly on primitive `w`.
pub fn mu(w: QuadInt) -> Result<Sign> {
    require_totally_positive(w)?;
    if !w.is_odd() {
        return Err(invalid(format!("μ needs an odd norm, got {w}")));
    }
    let n = u64::try_from(w.norm_i128()?).map_err(|_| Error::Overflow)?;
    Ok(jacobi_wide(w.a as i128, n))
}

/// `γ(w, z) = ((ac + 2bd) / (a² - 2b²))` for primitive totally positive `w`.
pub fn gamma(w: QuadInt, z: QuadInt) -> Result<Sign> {
    require_totally_positive(w)?;
    if !w.is_primitive() {
        return Err(invalid(format!("γ needs a primitive first argument, got {w}")));
    }
    let n = u64::try_from(w.norm_i128()?).map_err(|_| Error::Overflow)?;
    let num = (w.a as i128 * z.a as i128)
        .checked_add(2 * (w.b as i128) * (z.b as i128))
        .ok_or(Error::Overflow)?;
    Ok(jacobi_wide(num, n))
}

/// Odd residues mod 16 written as `(-1)^σ · 3^τ`, indexed by `r mod 16`.
const SIGMA_TAU: [(u8, u8); 16] = [
    (0, 0),
    (0, 0), // 1
    (0, 0),
    (0, 1), // 3
    (0, 0),
    (1, 3), // 5 = -11
    (0, 0),
    (1, 2), // 7 = -9
    (0, 0),
    (0, 2), // 9
    (0, 0),
    (0, 3), // 11
    (0, 0),
    (1, 1), // 13 = -3
    (0, 0),
    (1, 0), // 15 = -1
];

const I_POW: [GaussInt; 4] = [
    GaussInt::new(1, 0),
    GaussInt::new(0, 1),
    GaussInt::new(-1, 0),
    GaussInt::new(0, -1),
];

/// A Dirichlet character modulo 16.
///
/// `(Z/16)^× = ⟨-1⟩ × ⟨3⟩`; the character `(s, t)` sends `(-1)^σ 3^τ` to
/// `(-1)^{sσ} i^{tτ}`. `(0, 0)` is trivial and `(0, 1)` is the character with
/// kernel `{±1}`, taking the value `-1` on `±7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Char16 {
    s: u8,
    t: u8,
}

impl Char16 {
    pub const TRIVIAL: Char16 = Char16 { s: 0, t: 0 };
    /// Kernel `{±1}`, `χ(3) = i`.
    pub const CHI: Char16 = Char16 { s: 0, t: 1 };

    pub fn new(s: u8, t: u8) -> Result<Self> {
        if s > 1 || t > 3 {
            return Err(invalid(format!("character index ({s},{t}) out of range")));
        }
        Ok(Char16 { s, t })
    }

    pub fn s(self) -> u8 {
        self.s
    }

    pub fn t(self) -> u8 {
        self.t
    }

    /// All eight characters, trivial first.
    pub fn all() -> [Char16; 8] {
        let mut out = [Char16::TRIVIAL; 8];
        for (i, c) in out.iter_mut().enumerate() {
            *c = Char16 { s: (i / 4) as u8, t: (i % 4) as u8 };
        }
        out
    }

    /// Character value; zero on even arguments.
    #[inline]
    pub fn eval(self, r: i64) -> GaussInt {
        let r = r.rem_euclid(16) as usize;
        if r & 1 == 0 {
            return GaussInt::ZERO;
        }
        let (sigma, tau) = SIGMA_TAU[r];
        let v = I_POW[((self.t * tau) % 4) as usize];
        if self.s * sigma == 1 {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for Char16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.s, self.t)
    }
}

impl std::str::FromStr for Char16 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| invalid(format!("expected s,t but got {s:?}")))?;
        let a = a.trim().parse().map_err(|_| invalid(format!("bad s in {s:?}")))?;
        let b = b.trim().parse().map_err(|_| invalid(format!("bad t in {s:?}")))?;
        Char16::new(a, b)
    }
}

/// `c(r)` for odd `r`, zero otherwise.
pub fn char_eval(c: Char16, r: i64) -> GaussInt {
    c.eval(r)
}

/// `[w]_{φ,ψ} = [w] · φ(-N(w)) · ψ(a)`.
pub fn weighted_spin(w: QuadInt, phi: Char16, psi: Char16) -> Result<GaussInt> {
    require_totally_positive(w)?;
    let s = spin_unchecked(w);
    if s.is_zero() {
        return Ok(GaussInt::ZERO);
    }
    let n = w.norm_i128()?;
    let neg_norm_mod16 = (-n).rem_euclid(16) as i64;
    Ok(GaussInt::from(s) * phi.eval(neg_norm_mod16) * psi.eval(w.a))
}

/// `Σ_{k=0}^{3} [ε^{2k} w]_{φ,ψ}` for any totally positive generator `w`.
pub fn ideal_spin_from(w: QuadInt, phi: Char16, psi: Char16) -> Result<GaussInt> {
    require_totally_positive(w)?;
    let mut acc = GaussInt::ZERO;
    let mut x = w;
    for k in 0..4 {
        acc += weighted_spin(x, phi, psi)?;
        if k < 3 {
            x = x.mul_eps2()?;
        }
    }
    Ok(acc)
}

/// The ideal symbol `a_{φ,ψ,n}` evaluated at the canonical generator.
pub fn ideal_spin(n: DomainPoint, phi: Char16, psi: Char16) -> Result<GaussInt> {
    ideal_spin_from(n.w(), phi, psi)
}

/// Spins `[ε^{2k} w]` for `k = 0..3`.
pub fn translate_spins(w: QuadInt) -> Result<[Sign; 4]> {
    require_totally_positive(w)?;
    let mut out = [Sign::Zero; 4];
    let mut x = w;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = spin_unchecked(x);
        if k < 3 {
            x = x.mul_eps2()?;
        }
    }
    Ok(out)
}

fn require_minus_one_mod16(p: i64) -> Result<()> {
    if p <= 0 || p.rem_euclid(16) != 15 {
        Err(Error::NotMinusOneMod16(p))
    } else {
        Ok(())
    }
}

/// `⟨p⟩` with the representation `p = u² - 2v²`, `u ≡ 1 (mod 16)` it was
/// read from.
///
/// Primality of `p` is the caller's responsibility.
pub fn governing_representation(p: i64) -> Result<(QuadInt, Sign)> {
    require_minus_one_mod16(p)?;
    let w = normalize_generator(represent_prime(p)?.w(), NormalizeMode::U1Mod16)?;
    Ok((w, jacobi(w.b, w.a)?))
}

/// The governing symbol `⟨p⟩ = (v/u)` for `p = u² - 2v²`, `u ≡ 1 (mod 16)`;
/// `+1` exactly when `16 | h(-8p)`.
pub fn governing_symbol(p: i64) -> Result<Sign> {
    governing_representation(p).map(|(_, s)| s)
}

/// The same symbol through `(v/u)·χ(u)` with `u > 0`, `v ≡ 1 (mod 4)`.
pub fn governing_symbol_v_route(p: i64) -> Result<Sign> {
    require_minus_one_mod16(p)?;
    let w = normalize_generator(represent_prime(p)?.w(), NormalizeMode::V1Mod4)?;
    let chi = Char16::CHI.eval(w.a);
    let chi = match (chi.re, chi.im) {
        (1, 0) => Sign::Plus,
        (-1, 0) => Sign::Minus,
        _ => return Err(invalid(format!("χ({}) is not real", w.a))),
    };
    Ok(jacobi(w.b, w.a)? * chi)
}
