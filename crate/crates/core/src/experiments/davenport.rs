//! Lattice points in `D_k(X) = (D ∪ ε²D ∪ … ∪ ε^{2k}D) ∩ {N ≤ X}`.

use super::record::RecordRow;
use super::{chunks, par_map};
use crate::error::{invalid, Result};
use crate::ring::QuadInt;

/// `ln(1 + √2)`: the hyperbolic angle of `ε`.
fn t0() -> f64 {
    std::f64::consts::SQRT_2.ln_1p()
}

/// Area `a_k` and perimeter `ℓ_k` of `D_k(1)`, from a fine polygon.
///
/// The boundary is the segment from the origin to the norm-one hyperbola at
/// angle `-t₀`, the arc `(cosh t, sinh t / √2)` up to `(2k+1)t₀`, and the
/// segment back. `D_k(X)` is `D_k(1)` scaled by `√X`.
pub fn region_constants(k: u32) -> (f64, f64) {
    let (lo, hi) = (-t0(), (2 * k + 1) as f64 * t0());
    let steps = (1 << 15) * (2 * k as usize + 2);
    let pt = |t: f64| (t.cosh(), t.sinh() / std::f64::consts::SQRT_2);
    let mut area2 = 0.0;
    let mut arc = 0.0;
    let dt = (hi - lo) / steps as f64;
    let mut prev = pt(lo);
    for i in 1..=steps {
        let cur = pt(lo + dt * i as f64);
        // the cross term x₀y₁ - x₁y₀ of two arc points, without cancellation
        area2 += dt.sinh() / std::f64::consts::SQRT_2;
        arc += (cur.0 - prev.0).hypot(cur.1 - prev.1);
        prev = cur;
    }
    let (a, b) = (pt(lo), pt(hi));
    (area2 / 2.0, arc + a.0.hypot(a.1) + b.0.hypot(b.1))
}

/// Lattice count in `D_k(X)`, split by translate.
#[derive(Debug, Clone, PartialEq)]
pub struct DavenportCount {
    pub k: u32,
    pub x: u64,
    /// Points of `ε^{2j} D` with norm `≤ X`, for `j = 0..=k`.
    pub per_translate: Vec<u64>,
    pub count: u64,
    pub area: f64,
    pub perimeter: f64,
}

impl DavenportCount {
    /// `|count - a_k X|`.
    pub fn error(&self) -> f64 {
        (self.count as f64 - self.area * self.x as f64).abs()
    }

    /// `ℓ_k √X + 4`.
    pub fn allowance(&self) -> f64 {
        self.perimeter * (self.x as f64).sqrt() + 4.0
    }

    pub fn within_bound(&self) -> bool {
        self.error() <= self.allowance()
    }

    /// `value` is the signed error `count - a_k X`; `ratio ≤ 1` means the bound holds.
    pub fn row(&self) -> RecordRow {
        let signed = self.count as f64 - self.area * self.x as f64;
        RecordRow::new(
            self.x,
            format!("D_{}(X)", self.k),
            self.count,
            (signed, 0.0),
            self.allowance(),
        )
    }
}

/// Counts `(u, v)` with `1 ≤ u² - 2v² ≤ X` in `D_k`, scanning rows of fixed `u`
/// and locating each point's translate by reduction into `D`.
pub fn davenport_count(k: u32, x: u64) -> Result<DavenportCount> {
    if k > 6 {
        return Err(invalid(format!("k must be at most 6, got {k}")));
    }
    if x < 1 {
        return Err(invalid("X must be positive"));
    }
    // on ε^{2j}D the ratio of the embeddings lies in (ε^{4j-2}, ε^{4j+2}]
    let e = (1.0 + std::f64::consts::SQRT_2).powi(2 * k as i32 + 1);
    let u_max = ((x as f64).sqrt() * (e + 1.0 / e) / 2.0).ceil() as u64 + 1;
    let x128 = x as i128;
    let ranges = chunks(1, u_max, 256);
    let parts = par_map(&ranges, |lo, hi| -> Result<Vec<u64>> {
        let mut counts = vec![0u64; k as usize + 1];
        for u in lo..=hi {
            let u2 = (u as i128) * (u as i128);
            // 2v² ≤ u² - 1 and 2v² ≥ u² - X
            let v_hi = (((u2 - 1) / 2) as u128).isqrt() as i64;
            let mut v_lo = 0i64;
            if u2 > x128 {
                v_lo = (((u2 - x128) / 2) as u128).isqrt() as i64;
                while 2 * (v_lo as i128) * (v_lo as i128) < u2 - x128 {
                    v_lo += 1;
                }
            }
            for v in v_lo..=v_hi {
                for s in if v == 0 { &[1i64][..] } else { &[1, -1][..] } {
                    let w = QuadInt::new(u as i64, s * v);
                    let (_, shift) = w.reduce_to_domain()?;
                    let j = -shift;
                    if (0..=k as i64).contains(&j) {
                        counts[j as usize] += 1;
                    }
                }
            }
        }
        Ok(counts)
    });
    let mut per_translate = vec![0u64; k as usize + 1];
    for p in parts {
        for (t, c) in per_translate.iter_mut().zip(p?) {
            *t += c;
        }
    }
    let (area, perimeter) = region_constants(k);
    Ok(DavenportCount {
        k,
        x,
        count: per_translate.iter().sum(),
        per_translate,
        area,
        perimeter,
    })
}

/// [`davenport_count`] as a row.
pub fn davenport_check(k: u32, x: u64) -> Result<RecordRow> {
    Ok(davenport_count(k, x)?.row())
}
