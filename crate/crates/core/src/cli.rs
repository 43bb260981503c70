//! Command-line front end.
//!
//! Data goes to stdout (or `--out`), progress and errors to stderr. Exit
//! status is 0 on success, 1 when a verification or identity check fails and
//! 2 on malformed input.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::is_prime;
use crate::class_oracle::class_number;
use crate::error::{invalid, Error, Result};
use crate::experiments::{
    bilinear_demo_with, cancellation_identity, davenport_count, density_table_with,
    geometric_checkpoints, linear_sum, oscillation, verify_suite, weighted_prime_sum,
    weighted_prime_sums, write_csv, write_json, DensityOptions, RecordRow,
};
use crate::ring::{enumerate_domain, QuadInt};
use crate::symbols::{governing_representation, Char16};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Governing symbols for the 16-rank of CL(-8p), with the experiments around them.
#[derive(Debug, Parser)]
#[command(name = "govsym", version)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "GOVSYM_THREADS")]
    pub threads: Option<usize>,
    /// Output format; JSON for single values and CSV for tables by default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write data to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Governing symbol <p> = (v/u) for a prime p ≡ 15 (mod 16), where
    /// p = u² - 2v² and u ≡ 1 (mod 16). It is +1 exactly when 16 | h(-8p).
    Symbol {
        p: i64,
    },
    /// Class number h(D) and its 2-adic valuation, by counting reduced forms.
    Classnum {
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
    /// Percentages 100·#{p ≤ X : 2^k | h(-8p)} / π(X) for k = 1..kmax.
    /// k ≤ 3 use congruences, k = 4 the governing symbol; k = 5, 6 need --oracle.
    Density {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Compute h(-8p) for every p ≡ 15 (mod 16) and cross-check k = 4.
        #[arg(long)]
        oracle: bool,
        /// Resume from / append finished chunks to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Chunk progress on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// S(X) = Σ <p> over primes p ≡ 15 (mod 16), p ≤ X, against X^{199/200}
    /// and against √π(X).
    Oscillate {
        #[arg(long)]
        x: u64,
        /// "geometric" (10², 10³, …, X) or a comma-separated ascending list.
        #[arg(long, default_value = "geometric")]
        checkpoints: String,
    },
    /// Linear sum A_d(X) of the ideal spin over ideals n ≡ 0 mod d with
    /// N(n) ≤ X, against X^{5/6}.
    LinearSum {
        /// d = a+b√2 as "a,b".
        #[arg(long, allow_hyphen_values = true)]
        d: QuadInt,
        #[arg(long)]
        x: u64,
        /// Character mod 16 as "s,t": (-1)^σ 3^τ ↦ (-1)^{sσ} i^{tτ}.
        #[arg(long, default_value = "0,0")]
        phi: Char16,
        #[arg(long, default_value = "0,0")]
        psi: Char16,
    },
    /// Λ-weighted sum S_{φ,ψ}(X) of the ideal spin over prime-power ideals,
    /// against X^{149/150}.
    PrimeSum {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value = "0,0")]
        phi: Char16,
        #[arg(long, default_value = "0,0")]
        psi: Char16,
        /// All 64 character pairs as a table.
        #[arg(long)]
        all: bool,
    },
    /// Both sides of |Σ_{z mod W} γ(w1,z)γ(w2,z)| = Wφ(r)φ(W/r) (or 0), with
    /// W = N(w1 w2) and r = N(gcd(w1, conj w2)).
    Cancel {
        #[arg(long, allow_hyphen_values = true)]
        w1: QuadInt,
        #[arg(long, allow_hyphen_values = true)]
        w2: QuadInt,
    },
    /// Lattice points of D_k(X) = (D ∪ ε²D ∪ … ∪ ε^{2k}D) ∩ {N ≤ X} against
    /// a_k X, with allowance ℓ_k √X + 4.
    Davenport {
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        x: u64,
    },
    /// Bilinear sum B(M,N) = Σ Λ(m) a_{mn} against (M+N)^{1/12}(MN)^{11/12}.
    /// a_n vanishes identically unless psi = (s, t) has t odd, so the default is B = 0.
    Bilinear {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "0,0")]
        phi: Char16,
        #[arg(long, default_value = "0,0")]
        psi: Char16,
    },
    /// Identity suites: reciprocity, gmult, mu_mod8, eps8, almost_mult,
    /// ideal_spin_welldef, domain_unique, criterion, redei_reichardt,
    /// cancellation, order4, or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Canonical generators a+b√2 ∈ D of all ideals of norm ≤ X.
    Enumerate {
        #[arg(long)]
        x: u64,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return 2;
        }
        // a pool may already exist when run() is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Verification(_) => 1,
                _ => 2,
            }
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Error {
    invalid(format!("write failed: {e}"))
}

struct Output {
    w: Box<dyn Write>,
    format: Option<Format>,
}

impl Output {
    /// A single JSON object, or a one-line CSV table.
    fn value(&mut self, v: serde_json::Value) -> Result<()> {
        match self.format.unwrap_or(Format::Json) {
            Format::Json => writeln!(self.w, "{v}").map_err(io_err),
            Format::Csv => {
                let obj = v.as_object().expect("command values are objects");
                let mut w = csv::Writer::from_writer(&mut self.w);
                let cell = |x: &serde_json::Value| match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                w.write_record(obj.keys()).map_err(|e| invalid(e.to_string()))?;
                w.write_record(obj.values().map(cell)).map_err(|e| invalid(e.to_string()))?;
                w.flush().map_err(io_err)
            }
        }
    }

    fn rows(&mut self, rows: &[RecordRow], default: Format) -> Result<()> {
        match self.format.unwrap_or(default) {
            Format::Csv => write_csv(rows, &mut self.w),
            Format::Json => write_json(rows, &mut self.w),
        }
    }

    fn row(&mut self, row: &RecordRow) -> Result<()> {
        match self.format.unwrap_or(Format::Json) {
            Format::Json => {
                writeln!(self.w, "{}", serde_json::to_string(row).expect("row serializes"))
                    .map_err(io_err)
            }
            Format::Csv => write_csv(std::slice::from_ref(row), &mut self.w),
        }
    }

    fn finish(mut self) -> Result<()> {
        self.w.flush().map_err(io_err)
    }
}

fn parse_checkpoints(list: &str, x: u64) -> Result<Vec<u64>> {
    if list == "geometric" {
        return Ok(geometric_checkpoints(x));
    }
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| invalid(format!("bad checkpoint {s:?}")))
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<i32> {
    let mut out = Output { w: sink(&cli.out)?, format: cli.format };
    let mut code = 0;
    match &cli.command {
        Command::Symbol { p } => {
            let p = *p;
            if p <= 0 || p % 16 != 15 {
                return Err(Error::NotMinusOneMod16(p));
            }
            if !is_prime(p as u64) {
                return Err(invalid(format!("{p} is not prime")));
            }
            let (w, s) = governing_representation(p)?;
            out.value(json!({"p": p, "u": w.a, "v": w.b, "symbol": s.value()}))?;
        }
        Command::Classnum { d } => {
            let (h, v2) = class_number(*d)?;
            out.value(json!({"d": d, "h": h, "v2": v2}))?;
        }
        Command::Density { x, kmax, oracle, checkpoint, progress } => {
            let opts = DensityOptions {
                use_oracle: *oracle,
                checkpoint: checkpoint.clone(),
                progress: *progress,
            };
            out.rows(&density_table_with(*x, *kmax, &opts)?, Format::Csv)?;
        }
        Command::Oscillate { x, checkpoints } => {
            let cps = parse_checkpoints(checkpoints, *x)?;
            out.rows(&oscillation(*x, &cps)?, Format::Csv)?;
        }
        Command::LinearSum { d, x, phi, psi } => {
            out.row(&linear_sum(*d, *phi, *psi, *x)?.row())?;
        }
        Command::PrimeSum { x, phi, psi, all } => {
            if *all {
                out.rows(&weighted_prime_sums(*x)?, Format::Csv)?;
            } else {
                out.row(&weighted_prime_sum(*phi, *psi, *x)?)?;
            }
        }
        Command::Cancel { w1, w2 } => {
            let (lhs, rhs) = cancellation_identity(*w1, *w2)?;
            out.value(json!({
                "w1": w1.to_string(),
                "w2": w2.to_string(),
                "lhs": lhs,
                "rhs": rhs,
                "holds": lhs == rhs,
            }))?;
            code = (lhs != rhs) as i32;
        }
        Command::Davenport { k, x } => {
            let c = davenport_count(*k, *x)?;
            match out.format.unwrap_or(Format::Json) {
                Format::Json => out.value(json!({
                    "k": c.k,
                    "x": c.x,
                    "count": c.count,
                    "per_translate": c.per_translate,
                    "area": c.area,
                    "perimeter": c.perimeter,
                    "error": c.error(),
                    "allowance": c.allowance(),
                    "within_bound": c.within_bound(),
                }))?,
                Format::Csv => out.row(&c.row())?,
            }
            code = (!c.within_bound()) as i32;
        }
        Command::Bilinear { m, n, phi, psi } => {
            out.row(&bilinear_demo_with(*m, *n, *phi, *psi)?)?;
        }
        Command::Verify { suite, samples, seed } => {
            let reports = verify_suite(suite, *samples, *seed)?;
            match out.format.unwrap_or(Format::Csv) {
                Format::Json => {
                    writeln!(out.w, "{}", serde_json::to_string_pretty(&reports).expect("serializes"))
                        .map_err(io_err)?
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out.w);
                    w.write_record(["suite", "checked", "violations", "note"])
                        .map_err(|e| invalid(e.to_string()))?;
                    for r in &reports {
                        w.write_record([
                            r.suite.clone(),
                            r.checked.to_string(),
                            r.violations.to_string(),
                            r.note.clone(),
                        ])
                        .map_err(|e| invalid(e.to_string()))?;
                    }
                    w.flush().map_err(io_err)?;
                }
            }
            code = reports.iter().any(|r| !r.passed()) as i32;
        }
        Command::Enumerate { x } => {
            let pts: Vec<_> = enumerate_domain(*x)?.collect();
            match out.format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let v: Vec<_> = pts
                        .iter()
                        .map(|d| json!({"a": d.w().a, "b": d.w().b, "norm": d.norm()}))
                        .collect();
                    writeln!(out.w, "{}", serde_json::Value::Array(v)).map_err(io_err)?;
                }
                Format::Csv => {
                    writeln!(out.w, "a,b,norm").map_err(io_err)?;
                    for d in &pts {
                        writeln!(out.w, "{},{},{}", d.w().a, d.w().b, d.norm()).map_err(io_err)?;
                    }
                }
            }
        }
    }
    out.finish()?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_negative_values() {
        let c = Cli::try_parse_from(["govsym", "classnum", "-1016"]).unwrap();
        assert!(matches!(c.command, Command::Classnum { d: -1016 }));
        let c = Cli::try_parse_from(["govsym", "cancel", "--w1", "3,1", "--w2", "3,-1"]).unwrap();
        assert!(matches!(c.command, Command::Cancel { w2: QuadInt { a: 3, b: -1 }, .. }));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["govsym", "symbol", "17"]), 2);
        assert_eq!(run(["govsym", "symbol", "15"]), 2);
        assert_eq!(run(["govsym", "density", "--x", "1000", "--kmax", "5"]), 2);
        assert_eq!(run(["govsym", "nosuch"]), 2);
        assert_eq!(run(["govsym", "verify", "--suite", "bogus"]), 2);
    }
}
