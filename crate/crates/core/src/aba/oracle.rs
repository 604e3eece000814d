//! Reference semantics for ABA frameworks by subset enumeration.

use crate::error::{Error, Result};
use crate::semantics::engine::{self, Evaluator, Mask};
use crate::semantics::Semantics;

use super::{Abaf, AssumptionSet};

struct AbaEval<'a> {
    abaf: &'a Abaf,
    // minimal supports of each assumption's contrary, as masks
    attackers: Vec<Vec<Mask>>,
    // minimal supports of each assumption itself (non-trivial only when non-flat)
    supports: Vec<Vec<Mask>>,
}

impl<'a> AbaEval<'a> {
    fn new(abaf: &'a Abaf) -> Self {
        let index = |a: super::AtomId| abaf.assumptions().binary_search(&a).unwrap();
        let table = abaf.minimal_supports();
        let to_masks = |atom| -> Vec<Mask> {
            table
                .get(atom)
                .iter()
                .map(|s| s.iter().fold(0, |m, &a| m | 1 << index(a)))
                .collect()
        };
        let attackers = abaf
            .assumptions()
            .iter()
            .map(|&a| to_masks(abaf.contrary(a).unwrap()))
            .collect();
        let supports = abaf.assumptions().iter().map(|&a| to_masks(a)).collect();
        AbaEval {
            abaf,
            attackers,
            supports,
        }
    }

    fn mask(&self, set: &AssumptionSet) -> Mask {
        let assumptions = self.abaf.assumptions();
        set.iter()
            .fold(0, |m, a| m | 1 << assumptions.binary_search(a).unwrap())
    }

    fn set(&self, mask: Mask) -> AssumptionSet {
        let assumptions = self.abaf.assumptions();
        (0..assumptions.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| assumptions[i])
            .collect()
    }
}

fn hits(masks: &[Mask], set: Mask) -> bool {
    masks.iter().any(|&t| t & !set == 0)
}

impl Evaluator for AbaEval<'_> {
    fn len(&self) -> usize {
        self.attackers.len()
    }

    fn attacked(&self, set: Mask) -> Mask {
        (0..self.len())
            .filter(|&i| hits(&self.attackers[i], set))
            .fold(0, |m, i| m | 1 << i)
    }

    fn attackers(&self, element: usize) -> &[Mask] {
        &self.attackers[element]
    }

    fn closure(&self, set: Mask) -> Mask {
        if self.abaf.is_flat() {
            return set;
        }
        (0..self.len())
            .filter(|&i| hits(&self.supports[i], set))
            .fold(0, |m, i| m | 1 << i)
    }
}

fn admissible_semantics(abaf: &Abaf, sem: Semantics, nonflat_stable: bool) -> Result<()> {
    if abaf.is_flat() {
        return Ok(());
    }
    if !nonflat_stable {
        return Err(Error::NonFlat(
            "enable non-flat stable mode to evaluate this framework".into(),
        ));
    }
    if sem != Semantics::Stb {
        return Err(Error::UnsupportedSemantics(sem.token()));
    }
    Ok(())
}

/// Decides whether `set` is a `sem`-extension of `abaf`.
///
/// Non-flat frameworks are only accepted with `nonflat_stable`, and then only
/// for stable semantics, which additionally requires `set` to be closed.
pub fn check_extension(
    abaf: &Abaf,
    set: &AssumptionSet,
    sem: Semantics,
    nonflat_stable: bool,
) -> Result<bool> {
    abaf.check_assumptions(set)?;
    admissible_semantics(abaf, sem, nonflat_stable)?;
    engine::check_guard(abaf.assumptions().len(), 63)?;
    let ev = AbaEval::new(abaf);
    engine::check(&ev, ev.mask(set), sem)
}

/// Every `sem`-extension of `abaf`, sorted.
pub fn enumerate_extensions(
    abaf: &Abaf,
    sem: Semantics,
    nonflat_stable: bool,
    guard: usize,
) -> Result<Vec<AssumptionSet>> {
    admissible_semantics(abaf, sem, nonflat_stable)?;
    engine::check_guard(abaf.assumptions().len(), guard)?;
    let ev = AbaEval::new(abaf);
    let mut out: Vec<AssumptionSet> = engine::enumerate(&ev, sem)
        .into_iter()
        .map(|m| ev.set(m))
        .collect();
    out.sort();
    Ok(out)
}

/// The grounded extension of a flat framework, as the least fixpoint of
/// the defence function.
pub fn grounded_fixpoint(abaf: &Abaf) -> Result<AssumptionSet> {
    admissible_semantics(abaf, Semantics::Grd, false)?;
    engine::check_guard(abaf.assumptions().len(), 63)?;
    let ev = AbaEval::new(abaf);
    Ok(ev.set(engine::grounded(&ev)))
}
