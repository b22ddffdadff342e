//! Exact-arithmetic models of toroidal Lie algebras, their vertex
//! representations, and level-one global/local Weyl modules.
//!
//! Everything is computed over the rationals with arbitrary precision
//! (`num::BigRational`); no floating point appears anywhere.  The crate is
//! organised bottom-up:
//!
//! - [`rootdata`] — simply-laced root systems, the two-cocycle `eps`, and the
//!   finite-dimensional Lie algebra in its root-vector basis.
//! - [`torlie`] — the double-loop algebra with its two-dimensional central
//!   extension and degree operators; brackets, generators, a presentation
//!   checker, triangular decomposition and evaluation maps.
//! - [`autos`] — the swap automorphisms `S`, `S^{-1}`, the reflection
//!   automorphisms `T_0`, `T_theta`, and the loop shift `tau_a`.
//! - [`vrep`] — the level-one vertex representation on a Fock space tensored
//!   with a twisted group algebra, a degree-one polynomial algebra and Laurent
//!   powers of a marker variable `tau`.
//! - [`weylmod`] — spanning sets and exact ranks for local Weyl modules inside
//!   the vertex representation, and exact graded dimensions of the presented
//!   (defined-by-generators-and-relations) global Weyl module.
//! - [`charseries`] — triply graded character series and the product formulas
//!   they are compared against.
//! - [`verify`] — the end-to-end identity checks used by both the test suite
//!   and the `verify-all` CLI subcommand.
//!
//! The `toroidal` binary exposes the same functionality on the command line.

pub mod autos;
pub mod charseries;
pub mod cli;
pub mod linalg;
pub mod rootdata;
pub mod torlie;
pub mod verify;
pub mod vrep;
pub mod weylmod;

use num::BigRational;
use thiserror::Error;

/// Exact scalar type used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the fraction `n/d` as a [`Rat`].
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Two elements built over different root systems were combined.
    #[error("root system mismatch: {0} vs {1}")]
    RootSystemMismatch(String, String),
    /// A requested root system is outside the supported simply-laced list.
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    /// An index (node of the Dynkin diagram, affine node, ...) is out of range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// Textual element syntax that could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A computation exceeded its configured size budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A nilpotency cap was reached before `exp(ad x)` terminated.
    #[error("exp(ad) did not terminate within {0} steps")]
    ExpAdCap(usize),
    /// Invalid input that is well-formed syntactically but meaningless here.
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
