//! Reduced forms, class numbers and composition for discriminant -8p.

use govsym::class_oracle::{class_number, class_order, compose, reduce_form, QuadForm};

fn main() -> govsym::Result<()> {
    let p = 127;
    let d = -8 * p;
    let (h, v2) = class_number(d)?;
    println!("h({d}) = {h} (2-adic valuation {v2})");

    // a form of order 4: its square is the ambiguous class [2, 0, p]
    let f = reduce_form(QuadForm::new(15, -28, 30))?;
    let f2 = compose(f, f)?;
    println!("f = {f}, f² = {f2}, order {}", class_order(f)?);
    println!("f · f⁻¹ = {}", compose(f, f.inverse()?)?);

    for d in [-23, -56, -248, -1016, -8 * 719] {
        let (h, v2) = class_number(d)?;
        println!("h({d:>6}) = {h:>3}, 2^{v2} ‖ h");
    }
    Ok(())
}
