//! Partial sums S(X) of the governing symbol at powers of ten.

use govsym::experiments::{geometric_checkpoints, oscillation_points};

fn main() -> govsym::Result<()> {
    let x = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    println!("{:>9} {:>7} {:>6} {:>6} {:>6} {:>8}", "X", "π(X)", "#", "+1", "S(X)", "S/√π");
    for pt in oscillation_points(x, &geometric_checkpoints(x))? {
        println!(
            "{:>9} {:>7} {:>6} {:>6} {:>6} {:>8.4}",
            pt.x, pt.primes, pt.count, pt.plus, pt.sum, pt.sqrt_pi_ratio()
        );
    }
    Ok(())
}
