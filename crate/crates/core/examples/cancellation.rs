//! |Σ_z γ(w1,z)γ(w2,z)| over residues mod W = N(w1 w2), against the closed form.

use govsym::experiments::cancellation_identity;
use govsym::ring::QuadInt;

fn main() -> govsym::Result<()> {
    let cases = [((3, 1), (3, 1)), ((3, 1), (3, -1)), ((5, 2), (5, 2)), ((5, 2), (5, -2)), ((3, 1), (5, 1)), ((7, 2), (7, 2))];
    for ((a, b), (c, d)) in cases {
        let (w1, w2) = (QuadInt::new(a, b), QuadInt::new(c, d));
        let (lhs, rhs) = cancellation_identity(w1, w2)?;
        println!("w1 = {w1:<6} w2 = {w2:<6} |Σ| = {lhs:>6}  closed form {rhs:>6}");
    }
    Ok(())
}
