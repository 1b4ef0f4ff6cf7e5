//! Words that avoid reversed subwords.
//!
//! A word `w` is *k-reversal-free* when no subword `x` of length at least `k`
//! has its reversal `x^R` also occurring in `w`. This crate provides the word
//! primitives ([`word`], [`stream`]), the avoidance predicate and unavoidable
//! set checks ([`avoidance`]), morphisms and their image factor sets
//! ([`morphism`]), exhaustive backtracking search ([`search`]) and a one-shot
//! reproduction of the known constructions and bounds ([`claims`]).

pub mod avoidance;
pub mod claims;
pub mod error;
pub mod morphism;
pub mod search;
pub mod stream;
pub mod text;
pub mod word;

pub use avoidance::{AvoidanceQuery, ConflictWitness, Unavoidability, Violation};
pub use error::{Error, Result};
pub use morphism::{MarkerReport, Morphism};
pub use search::{CharacterizationReport, SearchOptions, SearchOutcome};
pub use stream::{Builtin, StreamSpec};
pub use word::{FactorSet, Symbol, Word};

/// Crate version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
