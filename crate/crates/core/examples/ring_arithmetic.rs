//! Arithmetic in Z[√2]: units, gcds and the fundamental domain for ε².

use govsym::ring::{enumerate_domain, gcd, QuadInt};

fn main() -> govsym::Result<()> {
    let eps = QuadInt::new(1, 1);
    println!("ε = {eps}, N(ε) = {}", eps.norm()?);
    println!("ε^8 = {}", eps.checked_pow(8)?);

    let w = QuadInt::new(7, 3);
    let z = QuadInt::new(5, -2);
    let wz = w.checked_mul(z)?;
    println!("({w})({z}) = {wz}, norms {} · {} = {}", w.norm()?, z.norm()?, wz.norm()?);
    println!("gcd({wz}, {w}) = {}", gcd(wz, w)?);

    // every totally positive element has exactly one ε²-translate in D
    let far = QuadInt::new(127, 0).checked_mul(eps.checked_pow(14)?)?;
    let (d, shift) = far.reduce_to_domain()?;
    println!("{far} = ε^{} · ({})", -2 * shift, d.w());

    let pts: Vec<_> = enumerate_domain(50)?.map(|p| p.w().to_string()).collect();
    println!("ideals of norm ≤ 50 ({}): {}", pts.len(), pts.join(", "));
    Ok(())
}
