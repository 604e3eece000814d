//! Splitting of SETAFs into a bottom part and a modified top part.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semantics::Semantics;
use crate::setaf::{ArgSet, Attack, Setaf, SubSetaf};

use super::solver::{Oracle, SetafSolver};

/// A partition of the arguments into `a1` (bottom) and `a2` (top) such that
/// no attack enters `a1` from outside.
#[derive(Debug, Clone)]
pub struct SetafSplitting<'a> {
    base: &'a Setaf,
    a1: ArgSet,
    a2: ArgSet,
    r1: Vec<usize>,
    r2: Vec<usize>,
    r3: Vec<usize>,
}

pub fn make_splitting<'a>(sf: &'a Setaf, a1: &ArgSet) -> Result<SetafSplitting<'a>> {
    if let Some(bad) = a1.iter().find(|a| a.index() >= sf.len()) {
        return Err(Error::UnknownAtom(format!("#{}", bad.0)));
    }
    let a2: ArgSet = sf.args().filter(|a| !a1.contains(a)).collect();
    let (mut r1, mut r2, mut r3) = (Vec::new(), Vec::new(), Vec::new());
    for (i, att) in sf.attacks().iter().enumerate() {
        if a1.contains(&att.head) {
            if !att.tail.is_subset(a1) {
                return Err(Error::InvalidSplit(sf.display_attack(att)));
            }
            r1.push(i);
        } else if att.tail.is_subset(&a2) {
            r2.push(i);
        } else {
            r3.push(i);
        }
    }
    Ok(SetafSplitting {
        base: sf,
        a1: a1.clone(),
        a2,
        r1,
        r2,
        r3,
    })
}

impl<'a> SetafSplitting<'a> {
    pub fn base(&self) -> &'a Setaf {
        self.base
    }

    pub fn a1(&self) -> &ArgSet {
        &self.a1
    }

    pub fn a2(&self) -> &ArgSet {
        &self.a2
    }

    fn attacks<'s>(&'s self, idx: &'s [usize]) -> impl Iterator<Item = &'a Attack> + 's {
        let all = self.base.attacks();
        idx.iter().map(move |&i| &all[i])
    }

    pub fn r1(&self) -> Vec<Attack> {
        self.attacks(&self.r1).cloned().collect()
    }

    pub fn r2(&self) -> Vec<Attack> {
        self.attacks(&self.r2).cloned().collect()
    }

    /// The links from the bottom into the top.
    pub fn r3(&self) -> Vec<Attack> {
        self.attacks(&self.r3).cloned().collect()
    }

    pub fn first(&self) -> SubSetaf {
        SubSetaf::induced(self.base, &self.a1, self.r1())
    }

    pub fn second(&self) -> SubSetaf {
        SubSetaf::induced(self.base, &self.a2, self.r2())
    }

    fn attacked_by(&self, e1: &ArgSet, idx: &[usize]) -> ArgSet {
        self.attacks(idx)
            .filter(|att| att.tail.is_subset(e1))
            .map(|att| att.head)
            .collect()
    }

    /// Top arguments that survive `e1`.
    pub fn surviving(&self, e1: &ArgSet) -> ArgSet {
        let defeated = self.attacked_by(e1, &self.r3);
        self.a2.difference(&defeated).copied().collect()
    }

    fn reduct_attacks(&self, e1: &ArgSet, a2p: &ArgSet) -> Vec<Attack> {
        let defeated = self.attacked_by(e1, &self.r3);
        let inner = self
            .attacks(&self.r2)
            .filter(|att| a2p.contains(&att.head) && att.tail.is_subset(a2p))
            .cloned();
        let projected = self
            .attacks(&self.r3)
            .filter(|att| {
                let outside: ArgSet = att.tail.difference(&self.a1).copied().collect();
                !outside.is_empty()
                    && att.tail.intersection(&self.a1).all(|t| e1.contains(t))
                    && att.tail.is_disjoint(&defeated)
                    && a2p.contains(&att.head)
            })
            .map(|att| Attack::new(att.tail.difference(&self.a1).copied(), att.head));
        inner.chain(projected).collect()
    }

    /// The top restricted to the surviving arguments, with links whose
    /// bottom part is fully accepted projected onto the top.
    pub fn reduct(&self, e1: &ArgSet) -> SubSetaf {
        let a2p = self.surviving(e1);
        let attacks = self.reduct_attacks(e1, &a2p);
        SubSetaf::induced(self.base, &a2p, attacks)
    }

    /// Links whose outcome `e1` leaves open: not attacked by `e1`, and
    /// relying on some bottom argument outside the range of `e1`.
    pub fn undecided_links(&self, e1: &ArgSet) -> Vec<Attack> {
        let mut r13 = self.r1.clone();
        r13.extend(&self.r3);
        let attacked = self.attacked_by(e1, &r13);
        let in_range: ArgSet = self.attacked_by(e1, &self.r1).union(e1).copied().collect();
        self.attacks(&self.r3)
            .filter(|att| {
                att.tail.is_disjoint(&attacked)
                    && att
                        .tail
                        .iter()
                        .any(|t| self.a1.contains(t) && !in_range.contains(t))
            })
            .cloned()
            .collect()
    }

    /// The reduct plus a self-including attack `((T ∩ A2') ∪ {h}, h)` for
    /// every undecided link `(T, h)` whose head survives.
    pub fn modification(&self, e1: &ArgSet) -> SubSetaf {
        let a2p = self.surviving(e1);
        let mut attacks = self.reduct_attacks(e1, &a2p);
        for link in self.undecided_links(e1) {
            if a2p.contains(&link.head) {
                let tail = link.tail.intersection(&a2p).copied().chain([link.head]);
                attacks.push(Attack::new(tail, link.head));
            }
        }
        SubSetaf::induced(self.base, &a2p, attacks)
    }

    /// Combines every `sem`-extension of the bottom with the extensions of
    /// the corresponding modified top.
    pub fn solve(&self, sem: Semantics, solver: &dyn SetafSolver) -> Result<Vec<ArgSet>> {
        check_splittable(sem)?;
        let first = self.first();
        let bottoms: Vec<ArgSet> = solver
            .extensions(&first.sf, sem)?
            .iter()
            .map(|e| first.to_parent(e))
            .collect();
        let parts: Vec<Vec<ArgSet>> = bottoms
            .par_iter()
            .map(|e1| {
                let top = self.modification(e1);
                Ok(solver
                    .extensions(&top.sf, sem)?
                    .iter()
                    .map(|e2| top.to_parent(e2).union(e1).copied().collect())
                    .collect())
            })
            .collect::<Result<_>>()?;
        let merged: BTreeSet<ArgSet> = parts.into_iter().flatten().collect();
        Ok(merged.into_iter().collect())
    }
}

pub(crate) fn check_splittable(sem: Semantics) -> Result<()> {
    if Semantics::SPLITTABLE.contains(&sem) {
        Ok(())
    } else {
        Err(Error::UnsupportedSemantics(sem.token()))
    }
}

/// `sem`-extensions of `sf` computed through the splitting at `a1`, with the
/// reference enumerator on both parts.
pub fn split_solve(sf: &Setaf, a1: &ArgSet, sem: Semantics) -> Result<Vec<ArgSet>> {
    make_splitting(sf, a1)?.solve(sem, &Oracle::default())
}
