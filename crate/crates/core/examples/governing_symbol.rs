//! The governing symbol ⟨p⟩ for the first few primes p ≡ 15 (mod 16),
//! checked against the 16-rank of CL(-8p) computed from forms.

use govsym::class_oracle::{class_number, rk16_oracle};
use govsym::experiments::sieve;
use govsym::symbols::governing_representation;

fn main() -> govsym::Result<()> {
    println!("{:>6} {:>12} {:>4} {:>6} {:>4}", "p", "u+v√2", "<p>", "h", "16|h");
    for p in sieve(1200).filter(|p| p % 16 == 15) {
        let p = p as i64;
        let (w, sym) = governing_representation(p)?;
        let (h, _) = class_number(-8 * p)?;
        assert_eq!(sym.value() == 1, rk16_oracle(p)?);
        println!("{p:>6} {:>12} {:>+4} {h:>6} {:>4}", w.to_string(), sym.value(), h % 16 == 0);
    }
    Ok(())
}
