//! Splitting a framework into a bottom part, solved first, and a top part
//! adjusted to each bottom extension.

pub mod aba;
pub mod quasi;
pub mod setaf;
pub mod solver;

pub use aba::{AbaSplitting, ModifiedTop};
pub use quasi::{BottomExpansion, QuasiSplitting};
pub use setaf::SetafSplitting;
pub use solver::{AbaSolver, Oracle, SetafSolver};
