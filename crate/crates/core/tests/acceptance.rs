//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use govsym::class_oracle::class_number;
use govsym::experiments::{
    davenport_count, density_table, oscillation_points, simple_sieve, verify_suite,
};
use govsym::symbols::{governing_symbol, Sign};

type Check = govsym::Result<(bool, String)>;

fn criterion_equivalence() -> Check {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in simple_sieve(100_000).into_iter().filter(|p| p % 16 == 15) {
        let p = p as i64;
        let (h, _) = class_number(-8 * p)?;
        if (governing_symbol(p)? == Sign::Plus) != (h % 16 == 0) {
            mismatches.push(p);
        }
        checked += 1;
    }
    Ok((mismatches.is_empty(), format!("{checked} primes, mismatches {mismatches:?}")))
}

fn density() -> Check {
    let expected = [50.09, 25.06, 12.53, 6.40, 3.16, 1.62];
    let rows = density_table(1_000_000, 6, true)?;
    let mut ok = rows.len() == 6;
    let mut cells = Vec::new();
    for (k, (row, want)) in rows.iter().zip(expected).enumerate() {
        let tol = if k < 4 { 0.02 } else { 0.03 };
        ok &= (row.value_re - want).abs() <= tol;
        cells.push(format!("k={} {:.4} (want {want} ± {tol})", k + 1, row.value_re));
    }
    Ok((ok, cells.join(", ")))
}

fn first_primes() -> Check {
    let mut found = Vec::new();
    for p in simple_sieve(10_000).into_iter().filter(|p| p % 16 == 15) {
        if governing_symbol(p as i64)? == Sign::Plus {
            found.push(p);
            if found.len() == 4 {
                break;
            }
        }
    }
    Ok((found == [127, 223, 479, 719], format!("{found:?}")))
}

fn oscillation_envelope() -> Check {
    let points = oscillation_points(10_000_000, &[10_000, 100_000, 1_000_000, 10_000_000])?;
    let mut ok = points.len() == 4;
    let mut cells = Vec::new();
    for pt in &points {
        let s = pt.sum.unsigned_abs() as f64;
        let x = pt.x as f64;
        ok &= s <= x.powf(0.75) && s <= x.powf(199.0 / 200.0) && pt.sqrt_pi_ratio() < 10.0;
        cells.push(format!("S({})={} |S|/√π={:.3}", pt.x, pt.sum, pt.sqrt_pi_ratio()));
    }
    Ok((ok, cells.join(", ")))
}

fn suite(name: &str, samples: u64) -> Check {
    let mut ok = true;
    let mut cells = Vec::new();
    for r in verify_suite(name, samples, 20_240_601)? {
        ok &= r.passed();
        cells.push(format!("{}: {} checked, {} violations", r.suite, r.checked, r.violations));
    }
    Ok((ok, cells.join("; ")))
}

fn identity_suites() -> Check {
    let names = [
        "eps8",
        "reciprocity",
        "gmult",
        "mu_mod8",
        "almost_mult",
        "ideal_spin_welldef",
        "domain_unique",
    ];
    let mut ok = true;
    let mut cells = Vec::new();
    for name in names {
        let (pass, line) = suite(name, 10_000)?;
        ok &= pass;
        cells.push(line);
    }
    Ok((ok, cells.join("; ")))
}

fn davenport() -> Check {
    let mut ok = true;
    let mut cells = Vec::new();
    for x in [10_000u64, 100_000, 1_000_000] {
        let c = davenport_count(0, x)?;
        ok &= c.within_bound();
        cells.push(format!("X={x}: |{} - a0 X| = {:.2} ≤ {:.1}", c.count, c.error(), c.allowance()));
        if x == 1_000_000 {
            let ratio = c.count as f64 / x as f64;
            let same_digits = (ratio * 1e4).floor() == (c.area * 1e4).floor();
            ok &= same_digits && (ratio - c.area).abs() < 0.5e-4;
            cells.push(format!("count/X = {ratio:.6}, a0 = {:.6}", c.area));
        }
    }
    Ok((ok, cells.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("criterion equivalence p < 10^5", criterion_equivalence),
        ("density table X = 10^6, k = 1..6", density),
        ("first primes with <p> = +1", first_primes),
        ("oscillation envelope to 10^7", oscillation_envelope),
        ("Redei-Reichardt p < 10^5", || suite("redei_reichardt", 0)),
        ("identity suites", identity_suites),
        ("cancellation identity", || suite("cancellation", 0)),
        ("order-4 classes", || suite("order4", 100)),
        ("lattice count in D", davenport),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as u32;
        println!(
            "{} {name} [{:.1}s]: {detail}",
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
