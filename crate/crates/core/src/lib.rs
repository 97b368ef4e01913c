//! Lexicographic ("first choice") generation of the naive 0/1 matrix of
//! type `(k, r)` and tooling to identify its leading block with the
//! point-line incidence structure of a finite projective space.
//!
//! The crate is organized by capability:
//!
//! - [`nimber`]: Nim addition, Conway nim-multiplication and the Fermat
//!   2-power fields `[0, 2^(2^a))` built from them.
//! - [`greedy`]: the entry-wise greedy generator, one row at a time.
//! - [`geometry`]: canonical `PG(n, q)` models, design and Pasch checks,
//!   incidence-structure isomorphism.
//! - [`verify`]: end-to-end harnesses producing [`VerificationReport`]s.
//! - [`export`]: CSV / JSON / PBM encodings of row lists.
//! - [`cli`]: the command-line front end used by the `naive-matrix` binary.
//!
//! All external indices (rows, columns, points) are 1-based.

mod bitset;
pub mod cli;
mod error;
pub mod export;
pub mod geometry;
pub mod greedy;
pub mod nimber;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use greedy::{generate, GenParams, Generator, GeneratorState, Row};
pub use nimber::{nim_add, nim_mul, FermatField, Nimber};
pub use report::{Check, Status, VerificationReport};
