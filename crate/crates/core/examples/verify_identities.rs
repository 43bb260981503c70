//! Runs every identity suite with a fixed seed.

use govsym::experiments::verify_suite;

fn main() -> govsym::Result<()> {
    let mut failed = false;
    for r in verify_suite("all", 2000, 7)? {
        failed |= !r.passed();
        println!("{:<20} {:>8} checked {:>4} violations  {}", r.suite, r.checked, r.violations, r.note);
    }
    if failed {
        std::process::exit(1);
    }
    Ok(())
}
