//! Proportion of primes p ≤ X with 2^k | h(-8p). Pass X as the first argument.

use govsym::experiments::{density_table, write_csv};

fn main() -> govsym::Result<()> {
    let x = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    // k = 5 and 6 use the class-number oracle, which also cross-checks k = 4
    let rows = density_table(x, 6, true)?;
    for r in &rows {
        println!("{:>4}  {:>8}  {:>9.5}%", r.label, r.count, r.value_re);
    }
    write_csv(&rows, std::io::stdout().lock())
}
