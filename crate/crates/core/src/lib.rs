//! Splitting-based reasoning for assumption-based argumentation (ABA) and
//! argumentation frameworks with collective attacks (SETAFs).
//!
//! The crate provides reference solvers for both formalisms, translations
//! between them, splitting and quasi-splitting of frameworks into a bottom
//! and a top part that can be solved in sequence, and a finder that proposes
//! splittings from the dependency structure of a framework.

pub mod aba;
pub mod error;
pub mod finder;
pub mod format;
pub mod generate;
pub mod instantiate;
pub mod semantics;
pub mod setaf;
pub mod split;

pub use aba::{Abaf, AssumptionSet, AtomId, Rule, SubAbaf};
pub use error::{Error, Result};
pub use semantics::{Semantics, DEFAULT_GUARD};
pub use setaf::{ArgId, ArgSet, Attack, Setaf, SubSetaf};
