//! Lattice points in the fundamental domain and its ε²-translates.

use govsym::experiments::{davenport_count, region_constants};

fn main() -> govsym::Result<()> {
    let (a0, l0) = region_constants(0);
    println!("a_0 = {a0:.9}, ℓ_0 = {l0:.6}");
    for x in [10_000u64, 100_000, 1_000_000] {
        let c = davenport_count(0, x)?;
        println!(
            "X = {x:>8}: {:>7} points, a_0 X = {:>11.2}, error {:>7.2} ≤ {:.1}",
            c.count,
            a0 * x as f64,
            c.error(),
            c.allowance()
        );
    }
    let c = davenport_count(3, 100_000)?;
    println!("k = 3: per translate {:?}", c.per_translate);
    Ok(())
}
