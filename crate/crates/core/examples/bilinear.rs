//! The bilinear sum B(M, N) against (M+N)^{1/12}(MN)^{11/12}.

use govsym::experiments::{bilinear_demo, bilinear_demo_with};
use govsym::symbols::Char16;

fn main() -> govsym::Result<()> {
    for (m, n) in [(100, 100), (1000, 100), (1000, 1000)] {
        // trivial characters: the ideal spin is identically zero
        let t = bilinear_demo(m, n)?;
        let r = bilinear_demo_with(m, n, Char16::TRIVIAL, Char16::CHI)?;
        println!(
            "M={m:<5} N={n:<5} trivial {:>4}   ψ=χ {:>10.2}{:>+10.2}i  ratio {:.5}",
            t.value_re, r.value_re, r.value_im, r.ratio
        );
    }
    Ok(())
}
