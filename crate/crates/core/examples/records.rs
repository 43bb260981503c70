//! Result rows written as CSV and JSON and read back.

use govsym::experiments::{davenport_check, read_csv, read_json, weighted_prime_sum, write_csv, write_json};
use govsym::symbols::Char16;

fn main() -> govsym::Result<()> {
    let rows = vec![
        davenport_check(0, 10_000)?,
        weighted_prime_sum(Char16::TRIVIAL, Char16::CHI, 10_000)?,
    ];
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    assert_eq!(read_csv(&csv[..])?.len(), rows.len());

    let mut json = Vec::new();
    write_json(&rows, &mut json)?;
    assert_eq!(read_json(&json[..])?, rows);
    println!("{}", String::from_utf8_lossy(&json));
    Ok(())
}
