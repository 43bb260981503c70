//! Governing symbols for the 16-rank of the class groups CL(-8p).
//!
//! For a prime `p ≡ -1 (mod 16)` write `p = u² - 2v²` with `u ≡ 1 (mod 16)`;
//! the Jacobi symbol `(v/u)` is `+1` exactly when `16 | h(-8p)`. This crate
//! computes that symbol through exact arithmetic in `Z[√2]`, checks it against
//! an independent class-number oracle built on reduced binary quadratic forms,
//! and runs the density, oscillation and character-sum experiments that
//! surround it.
//!
//! Modules:
//!
//! - [`ring`]: `Z[√2]` arithmetic, the fundamental domain `D` and its enumeration.
//! - [`symbols`]: Jacobi symbol, spin symbol, `μ`, `γ`, characters mod 16 and the
//!   governing symbol `⟨p⟩`.
//! - [`represent`]: solving `p = u² - 2v²` and normalizing within the unit orbit.
//! - [`class_oracle`]: reduced forms, class numbers and Gauss composition.
//! - [`experiments`]: sieve, density table, oscillation sums, weighted sums,
//!   lattice counts and the identity verification suites.
//! - [`cli`]: the command-line front end used by the `govsym` binary.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example governing_symbol`
//! is a good starting point.

pub mod arith;
pub mod class_oracle;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod represent;
pub mod ring;
pub mod symbols;

pub use class_oracle::QuadForm;
pub use error::{Error, Result};
pub use ring::{DomainPoint, QuadInt};
pub use symbols::{Char16, GaussInt, Sign};
