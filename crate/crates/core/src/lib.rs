//! Exact enumeration of permutations avoiding pattern chains.
//!
//! A chain constrains a permutation and its functional powers: level i of a
//! chain restricts the patterns the i-th power may contain. For the base
//! class {312, 321} the problem reduces to counting integer compositions
//! avoiding a finite set of composition patterns under dominance; for
//! {312, 4321} and length-3 square patterns the crate carries the known
//! closed forms. Every fast path is backed by independent brute-force
//! oracles, and computed sequences can be checked against OEIS b-files.

pub mod chain;
pub mod comp;
pub mod counting;
pub mod error;
pub mod oeis;
pub mod pattern_class;
pub mod perm;
pub mod sequences;

pub use chain::{ChainSpec, CubeComparison, EndsInOneTable, OracleBounds, RecurrenceCheck};
pub use comp::{Composition, CompositionSet};
pub use counting::{CompCounter, CountMethod, CountResult};
pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation};

// Re-exported so downstream crates share one big-integer type.
pub use num_bigint::{BigInt, BigUint};
