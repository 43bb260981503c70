//! Λ-weighted sums of the ideal spin over prime-power ideals, for all 64
//! character pairs, against X^{149/150}.

use govsym::experiments::weighted_prime_sums;

fn main() -> govsym::Result<()> {
    let x = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let rows = weighted_prime_sums(x)?;
    let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    for r in rows.iter().filter(|r| r.abs() > 0.0) {
        println!("{:<14} {:>12.3} {:>+12.3}i  ratio {:.4}", r.label, r.value_re, r.value_im, r.ratio);
    }
    println!("{} ideals, largest |S|/X^(149/150) = {worst:.4}", rows[0].count);
    Ok(())
}
