//! Linear sums A_d(X) over ideals divisible by d.

use govsym::experiments::linear_sum;
use govsym::ring::QuadInt;
use govsym::symbols::Char16;

fn main() -> govsym::Result<()> {
    let x = 100_000;
    for (a, b) in [(1, 0), (3, 1), (5, 2), (7, 0), (2, 1)] {
        let d = QuadInt::new(a, b);
        for psi in [Char16::TRIVIAL, Char16::CHI] {
            let s = linear_sum(d, Char16::TRIVIAL, psi, x)?;
            println!(
                "d = {d:<8} ψ = {psi}  A = {:>+6}{:>+6}i over {:>6} ideals  (X^5/6 = {:.0}){}",
                s.value.re,
                s.value.im,
                s.count,
                s.envelope(),
                if s.even { "  even d" } else { "" }
            );
        }
    }
    Ok(())
}
