//! Pluggable sub-solvers for the splitting pipelines.

use crate::aba::{self, Abaf, AssumptionSet};
use crate::error::Result;
use crate::semantics::{Semantics, DEFAULT_GUARD};
use crate::setaf::{self, ArgSet, Setaf};

pub trait AbaSolver: Sync {
    fn extensions(&self, abaf: &Abaf, sem: Semantics) -> Result<Vec<AssumptionSet>>;
}

pub trait SetafSolver: Sync {
    fn extensions(&self, sf: &Setaf, sem: Semantics) -> Result<Vec<ArgSet>>;
}

/// The reference enumerators. Non-flat ABA frameworks are evaluated under
/// the closed stable semantics.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub guard: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            guard: DEFAULT_GUARD,
        }
    }
}

impl AbaSolver for Oracle {
    fn extensions(&self, abaf: &Abaf, sem: Semantics) -> Result<Vec<AssumptionSet>> {
        aba::enumerate_extensions(abaf, sem, !abaf.is_flat(), self.guard)
    }
}

impl SetafSolver for Oracle {
    fn extensions(&self, sf: &Setaf, sem: Semantics) -> Result<Vec<ArgSet>> {
        setaf::enumerate_extensions(sf, sem, self.guard)
    }
}
