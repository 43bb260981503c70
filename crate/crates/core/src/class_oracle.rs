//! Class groups of negative discriminants through binary quadratic forms.
//!
//! This module shares no code with the `Z[√2]` side of the crate; it is the
//! independent check on the governing symbol. Class numbers come from counting
//! reduced forms, and group structure from Gauss composition.

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// The form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    /// `b² - 4ac`.
    pub fn discriminant(self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// Identity class: `[1, 0, -D/4]` or `[1, 1, (1-D)/4]`.
    pub fn principal(disc: i64) -> Result<QuadForm> {
        check_discriminant(disc)?;
        if disc.rem_euclid(4) == 0 {
            Ok(QuadForm::new(1, 0, -disc / 4))
        } else {
            Ok(QuadForm::new(1, 1, (1 - disc) / 4))
        }
    }

    pub fn is_primitive(self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Inverse class `[a, -b, c]`, reduced.
    pub fn inverse(self) -> Result<QuadForm> {
        reduce_form(QuadForm::new(self.a, -self.b, self.c))
    }

    /// Value at `(x, y)`.
    pub fn eval(self, x: i64, y: i64) -> i128 {
        let (a, b, c, x, y) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            x as i128,
            y as i128,
        );
        a * x * x + b * x * y + c * y * y
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

fn check_discriminant(disc: i64) -> Result<()> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(invalid(format!("{disc} is not a negative discriminant")));
    }
    Ok(())
}

/// The reduced representative of the `SL₂(Z)` class of a positive definite form.
pub fn reduce_form(f: QuadForm) -> Result<QuadForm> {
    if f.discriminant() >= 0 || f.a <= 0 {
        return Err(invalid(format!("{f} is not positive definite")));
    }
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    loop {
        // bring b into (-a, a]
        if !(-a < b && b <= a) {
            let r = Integer::div_floor(&(a - b), &(2 * a));
            c += r * (a * r + b);
            b += 2 * r * a;
        }
        if a > c || (a == c && b < 0) {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else {
            break;
        }
    }
    Ok(QuadForm::new(narrow(a)?, narrow(b)?, narrow(c)?))
}

/// Class number `h(D)` by counting reduced primitive forms, together with
/// the exponent of 2 in `h`.
pub fn class_number(disc: i64) -> Result<(u64, u32)> {
    check_discriminant(disc)?;
    let abs_d = disc.unsigned_abs();
    let b_max = (abs_d / 3).sqrt();
    let mut h = 0u64;
    let mut b = abs_d & 1;
    while b <= b_max {
        let n = (b * b + abs_d) / 4;
        let mut a = b.max(1);
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                if a.gcd(&b).gcd(&c) == 1 {
                    h += if b == 0 || b == a || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok((h, h.trailing_zeros()))
}

/// Class numbers for many discriminants of bounded size.
///
/// Enumerates the same reduced forms as [`class_number`], but finds the
/// divisors `a` of `(b² - D)/4` from a smallest-prime-factor table instead of
/// by trial division.
#[derive(Debug, Clone)]
pub struct ClassNumberTable {
    spf: Vec<u32>,
    max_abs_disc: u64,
}

/// Largest factor table [`ClassNumberTable::new`] will build.
pub const MAX_FACTOR_TABLE: u64 = 1 << 28;

impl ClassNumberTable {
    /// Table serving every discriminant with `|D| ≤ max_abs_disc`.
    pub fn new(max_abs_disc: u64) -> Result<Self> {
        let limit = max_abs_disc / 3 + 2;
        if limit > MAX_FACTOR_TABLE {
            return Err(Error::Capability(format!(
                "factor table for |D| ≤ {max_abs_disc} is too large"
            )));
        }
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                for j in (i..=limit).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Ok(ClassNumberTable { spf, max_abs_disc })
    }

    /// Same result as [`class_number`].
    pub fn class_number(&self, disc: i64) -> Result<(u64, u32)> {
        check_discriminant(disc)?;
        let abs_d = disc.unsigned_abs();
        if abs_d > self.max_abs_disc {
            return Err(invalid(format!("|{disc}| exceeds the table bound {}", self.max_abs_disc)));
        }
        let b_max = (abs_d / 3).sqrt();
        let mut divisors = Vec::with_capacity(64);
        let mut h = 0u64;
        let mut b = abs_d & 1;
        while b <= b_max {
            let n = (b * b + abs_d) / 4;
            self.divisors(n, &mut divisors);
            for &a in &divisors {
                if a < b.max(1) || a * a > n {
                    continue;
                }
                let c = n / a;
                if a.gcd(&b).gcd(&c) == 1 {
                    h += if b == 0 || b == a || a == c { 1 } else { 2 };
                }
            }
            b += 2;
        }
        Ok((h, h.trailing_zeros()))
    }

    fn divisors(&self, mut n: u64, out: &mut Vec<u64>) {
        out.clear();
        out.push(1);
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
    }
}

/// Gauss composition of two primitive forms of one discriminant, reduced.
pub fn compose(f: QuadForm, g: QuadForm) -> Result<QuadForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(invalid(format!("{f} and {g} have different discriminants")));
    }
    if disc >= 0 || f.a <= 0 || g.a <= 0 {
        return Err(invalid("composition needs positive definite forms"));
    }
    let (f, g) = if f.a > g.a { (g, f) } else { (f, g) };
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;

    let (d, y1) = if a2 % a1 == 0 {
        (a1, 0)
    } else {
        let (d, u, _) = xgcd(a2, a1);
        (d, u)
    };
    let (d1, x2, y2) = if s % d == 0 {
        (d, 0, -1)
    } else {
        let (d1, u, v) = xgcd(s, d);
        (d1, u, -v)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - disc) / (4 * a3);
    reduce_form(QuadForm::new(narrow(a3)?, narrow(b3)?, narrow(c3)?))
}

/// Order of the class of `f` in the class group.
pub fn class_order(f: QuadForm) -> Result<u64> {
    let disc = i64::try_from(f.discriminant()).map_err(|_| Error::Overflow)?;
    if !f.is_primitive() {
        return Err(invalid(format!("{f} is not primitive")));
    }
    let id = QuadForm::principal(disc)?;
    let base = reduce_form(f)?;
    let mut g = base;
    let mut k = 1u64;
    while g != id {
        g = compose(g, base)?;
        k += 1;
        if k > 1 << 32 {
            return Err(Error::Capability(format!("order of {f} is out of range")));
        }
    }
    Ok(k)
}

/// Whether `16 | h(-8p)` for a prime `p ≡ 3 (mod 4)`, read from the class
/// number. The 2-part of `CL(-8p)` is cyclic here, so this is the 16-rank.
pub fn rk16_oracle(p: i64) -> Result<bool> {
    if p <= 0 || p.rem_euclid(4) != 3 {
        return Err(invalid(format!("{p} is not ≡ 3 (mod 4)")));
    }
    let disc = p.checked_mul(-8).ok_or(Error::Overflow)?;
    Ok(class_number(disc)?.1 >= 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reduced forms reachable from `f` through small unimodular substitutions.
    fn reduced_images(f: QuadForm) -> Vec<QuadForm> {
        let mut out = Vec::new();
        for p in -6i64..=6 {
            for q in -6i64..=6 {
                for r in -6i64..=6 {
                    for s in -6i64..=6 {
                        if p * s - q * r != 1 {
                            continue;
                        }
                        let a = f.eval(p, r) as i64;
                        let c = f.eval(q, s) as i64;
                        let b = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s;
                        let g = QuadForm::new(a, b, c);
                        if g.is_reduced() && !out.contains(&g) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn reduction_examples() {
        let f = QuadForm::new(2, 0, 127);
        assert_eq!(reduce_form(f).unwrap(), f);
        let p = QuadForm::principal(-1016).unwrap();
        assert_eq!(p, QuadForm::new(1, 0, 254));
        assert_eq!(reduce_form(p).unwrap(), p);
        let g = QuadForm::new(15, -28, 16);
        assert_eq!(g.discriminant(), -176);
        let images = reduced_images(g);
        assert_eq!(images.len(), 1);
        assert_eq!(reduce_form(g).unwrap(), images[0]);
        assert!(reduce_form(QuadForm::new(1, 3, 1)).is_err());
        assert!(reduce_form(QuadForm::new(-1, 0, -1)).is_err());
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-8).unwrap(), (1, 0));
        assert_eq!(class_number(-248).unwrap(), (8, 3));
        assert_eq!(class_number(-56).unwrap(), (4, 2));
        assert!(class_number(-1016).unwrap().1 >= 4);
        // classical small values
        for (d, h) in [(-3, 1), (-4, 1), (-23, 3), (-47, 5), (-71, 7), (-84, 4), (-163, 1)] {
            assert_eq!(class_number(d).unwrap().0, h, "D = {d}");
        }
        assert!(class_number(-5).is_err());
        assert!(class_number(12).is_err());
    }

    #[test]
    fn table_agrees_with_direct_count() {
        let t = ClassNumberTable::new(20_000).unwrap();
        for d in (3..=20_000i64).map(|x| -x).filter(|d| matches!(d.rem_euclid(4), 0 | 1)) {
            assert_eq!(t.class_number(d).unwrap(), class_number(d).unwrap(), "D = {d}");
        }
        assert!(t.class_number(-20_004).is_err());
    }

    #[test]
    fn composition_examples() {
        let d = -1016;
        let id = QuadForm::principal(d).unwrap();
        let f = QuadForm::new(15, -28, 30);
        assert_eq!(f.discriminant(), d as i128);
        assert_eq!(compose(id, f).unwrap(), reduce_form(f).unwrap());
        assert_eq!(compose(f, f).unwrap(), QuadForm::new(2, 0, 127));
        assert_eq!(compose(f, f.inverse().unwrap()).unwrap(), id);
        assert!(compose(f, QuadForm::principal(-8).unwrap()).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(class_order(QuadForm::new(15, -28, 30)).unwrap(), 4);
        assert_eq!(class_order(QuadForm::principal(-1016).unwrap()).unwrap(), 1);
        assert_eq!(class_order(QuadForm::new(2, 0, 127)).unwrap(), 2);
    }

    #[test]
    fn oracle() {
        assert!(rk16_oracle(127).unwrap());
        assert!(!rk16_oracle(31).unwrap());
        assert!(!rk16_oracle(7).unwrap());
        assert!(rk16_oracle(17).is_err());
    }

    #[test]
    fn group_of_discriminant_minus_1016_is_closed() {
        // every reduced form, composed with every other, lands on a reduced form
        let d = -1016i64;
        let mut forms = Vec::new();
        for a in 1..=20i64 {
            for b in -a..=a {
                let num = b * b - d;
                if num % (4 * a) == 0 {
                    let f = QuadForm::new(a, b, num / (4 * a));
                    if f.is_reduced() && f.is_primitive() {
                        forms.push(f);
                    }
                }
            }
        }
        assert_eq!(forms.len() as u64, class_number(d).unwrap().0);
        for &f in &forms {
            for &g in &forms {
                let h = compose(f, g).unwrap();
                assert!(forms.contains(&h));
                assert_eq!(h, compose(g, f).unwrap());
            }
            assert_eq!(forms.len() as u64 % class_order(f).unwrap(), 0);
        }
    }
}
