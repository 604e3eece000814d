//! Splitting of ABA frameworks along an atom-closed set of sentences.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::aba::{Abaf, AssumptionSet, AtomId, Rule, SubAbaf, SubBuilder};
use crate::error::{Error, Result};
use crate::semantics::Semantics;

use super::setaf::check_splittable;
use super::solver::{AbaSolver, Oracle};

#[derive(Debug, Clone)]
pub struct AbaSplitting<'a> {
    base: &'a Abaf,
    s: BTreeSet<AtomId>,
    r1: Vec<usize>,
    r2: Vec<usize>,
}

/// The top framework after a bottom extension has been fixed.
#[derive(Debug, Clone)]
pub struct ModifiedTop {
    pub sub: SubAbaf,
    /// Local ids of the fresh self-attacking assumption and its contrary.
    pub fresh: Option<(AtomId, AtomId)>,
}

pub(crate) fn check_closed(abaf: &Abaf, s: &BTreeSet<AtomId>) -> Result<()> {
    if let Some(bad) = s.iter().find(|a| a.index() >= abaf.len()) {
        return Err(Error::UnknownAtom(format!("#{}", bad.0)));
    }
    match abaf.atom_closure(s).difference(s).next() {
        Some(&missing) => Err(Error::NotAtomClosed(abaf.name(missing).into())),
        None => Ok(()),
    }
}

/// Validates `s` as a splitting set: atom-closed, and every rule with its
/// head in `s` has its whole body in `s`.
pub fn make_splitting<'a>(abaf: &'a Abaf, s: &BTreeSet<AtomId>) -> Result<AbaSplitting<'a>> {
    check_closed(abaf, s)?;
    let (mut r1, mut r2) = (Vec::new(), Vec::new());
    for (i, rule) in abaf.rules().iter().enumerate() {
        if s.contains(&rule.head) {
            if !rule.body.is_subset(s) {
                return Err(Error::HeadInBodyOut(abaf.display_rule(rule)));
            }
            r1.push(i);
        } else {
            r2.push(i);
        }
    }
    Ok(AbaSplitting {
        base: abaf,
        s: s.clone(),
        r1,
        r2,
    })
}

/// Assumptions of `d1` neither in `e` nor attacked by it.
pub fn undecided_assumptions(d1: &Abaf, e: &AssumptionSet) -> AssumptionSet {
    let th = d1.theory_closure(e);
    d1.assumptions()
        .iter()
        .copied()
        .filter(|a| !e.contains(a) && !th.contains(&d1.contrary(*a).unwrap()))
        .collect()
}

/// Undecided assumptions of `d1` under `e`, and the atoms derivable through
/// a derivation that uses one of them and none of whose assumptions is
/// attacked by `e`. Derivations are enumerated exactly, so this is
/// exponential in the number of assumptions.
pub fn undecided_theory(d1: &Abaf, e: &AssumptionSet) -> (AssumptionSet, BTreeSet<AtomId>) {
    let ua = undecided_assumptions(d1, e);
    let th = d1.theory_closure(e);
    let leaves = d1.derivation_leaf_sets();
    let ut = d1
        .atoms()
        .filter(|p| {
            leaves[p.index()].iter().any(|t| {
                !t.is_disjoint(&ua) && t.iter().all(|a| !th.contains(&d1.contrary(*a).unwrap()))
            })
        })
        .collect();
    (ua, ut)
}

impl<'a> AbaSplitting<'a> {
    pub fn base(&self) -> &'a Abaf {
        self.base
    }

    pub fn set(&self) -> &BTreeSet<AtomId> {
        &self.s
    }

    /// Indices of the rules with their head in the splitting set.
    pub fn r1(&self) -> &[usize] {
        &self.r1
    }

    pub fn r2(&self) -> &[usize] {
        &self.r2
    }

    pub fn a1(&self) -> AssumptionSet {
        self.base
            .assumptions()
            .iter()
            .copied()
            .filter(|a| self.s.contains(a))
            .collect()
    }

    pub fn a2(&self) -> AssumptionSet {
        self.base
            .assumptions()
            .iter()
            .copied()
            .filter(|a| !self.s.contains(a))
            .collect()
    }

    pub fn bottom(&self) -> SubAbaf {
        self.base
            .projection(&self.s)
            .expect("splitting set is atom-closed")
    }

    /// Atoms derivable from `e` with bottom rules.
    pub fn bottom_theory(&self, e: &AssumptionSet) -> BTreeSet<AtomId> {
        let in_bottom = membership(self.base.rules().len(), &self.r1);
        self.base.theory_closure_with(e, &|i| in_bottom[i])
    }

    fn top_builder(&self) -> SubBuilder<'a> {
        let mut sub = SubBuilder::new(self.base, self.base.atoms().filter(|a| !self.s.contains(a)));
        for a in self.a2() {
            sub.keep_assumption(a);
        }
        sub
    }

    fn reduct_rules(&self, th: &BTreeSet<AtomId>, sub: &mut SubBuilder<'_>) {
        for &i in &self.r2 {
            let rule = &self.base.rules()[i];
            if rule
                .body
                .iter()
                .filter(|b| self.s.contains(b))
                .all(|b| th.contains(b))
            {
                let body = rule.body.iter().copied().filter(|b| !self.s.contains(b));
                sub.parent_rule(rule.head, body);
            }
        }
    }

    /// The top with rules depending on bottom atoms not derived from `e`
    /// removed, and the derived ones erased from the remaining bodies.
    pub fn reduct(&self, e: &AssumptionSet) -> SubAbaf {
        let th = self.bottom_theory(e);
        let mut sub = self.top_builder();
        self.reduct_rules(&th, &mut sub);
        sub.build()
    }

    /// Atoms derivable from what `e` attacks in the bottom, plus the
    /// contraries of `e`.
    pub fn incompatible_sentences(&self, e: &AssumptionSet) -> BTreeSet<AtomId> {
        let in_bottom = membership(self.base.rules().len(), &self.r1);
        let (attacked, _) = self.base.range(e, Some(&|i| in_bottom[i]));
        let mut out = self.bottom_theory(&attacked);
        out.extend(self.base.contraries_of(e));
        out
    }

    /// Undecided assumptions and undecided theory of the bottom, in parent
    /// ids.
    pub fn undecided_theory(&self, e: &AssumptionSet) -> (AssumptionSet, BTreeSet<AtomId>) {
        let bottom = self.bottom();
        let (ua, ut) = undecided_theory(&bottom.abaf, &bottom.from_parent(e));
        (bottom.to_parent(&ua), bottom.to_parent(&ut))
    }

    fn undecided(&self, e: &AssumptionSet) -> AssumptionSet {
        let th = self.bottom_theory(e);
        self.a1()
            .into_iter()
            .filter(|a| !e.contains(a) && !th.contains(&self.base.contrary(*a).unwrap()))
            .collect()
    }

    fn with_fresh(&self, e: &AssumptionSet, variants: impl Fn(&Rule) -> bool) -> ModifiedTop {
        let th = self.bottom_theory(e);
        let mut sub = self.top_builder();
        self.reduct_rules(&th, &mut sub);
        let xu = sub.fresh("_u");
        let cxu = sub.fresh("_cu");
        sub.assume(xu, cxu);
        sub.rule(Rule::new(cxu, [xu]));
        for &i in &self.r2 {
            let rule = &self.base.rules()[i];
            if variants(rule) {
                let mut body: Vec<AtomId> = rule
                    .body
                    .iter()
                    .filter(|b| !self.s.contains(b))
                    .map(|&b| sub.local(b))
                    .collect();
                body.push(xu);
                sub.rule(Rule::new(sub.local(rule.head), body));
            }
        }
        ModifiedTop {
            sub: sub.build(),
            fresh: Some((xu, cxu)),
        }
    }

    /// The reduct, extended when the bottom leaves assumptions undecided by
    /// a fresh self-attacking assumption `_u` standing for "undecided".
    /// A top rule gets a copy guarded by `_u` when its bottom premises are
    /// not derivable from `e` but become derivable once the undecided
    /// assumptions are added.
    pub fn modification(&self, e: &AssumptionSet) -> ModifiedTop {
        let ua = self.undecided(e);
        if ua.is_empty() {
            return ModifiedTop {
                sub: self.reduct(e),
                fresh: None,
            };
        }
        let decided = self.bottom_theory(e);
        let possible = self.bottom_theory(&e.union(&ua).copied().collect());
        self.with_fresh(e, |rule| {
            let below: Vec<&AtomId> = rule.body.iter().filter(|b| self.s.contains(b)).collect();
            below.iter().all(|b| possible.contains(b)) && !below.iter().all(|b| decided.contains(b))
        })
    }

    /// Variant of [`AbaSplitting::modification`] that guards a rule copy by
    /// `_u` whenever its body meets the undecided theory and avoids the
    /// incompatible sentences. Kept for comparison: it guards rules whose
    /// other premises are already out, and skips rules whose premise is
    /// derivable both from attacked and from undecided assumptions.
    pub fn naive_modification(&self, e: &AssumptionSet) -> ModifiedTop {
        let (ua, ut) = self.undecided_theory(e);
        if ua.is_empty() {
            return ModifiedTop {
                sub: self.reduct(e),
                fresh: None,
            };
        }
        let is = self.incompatible_sentences(e);
        self.with_fresh(e, |rule| {
            rule.body.is_disjoint(&is) && !rule.body.is_disjoint(&ut)
        })
    }

    pub fn solve(&self, sem: Semantics, solver: &dyn AbaSolver) -> Result<Vec<AssumptionSet>> {
        check_splittable(sem)?;
        let bottom = self.bottom();
        let firsts: Vec<AssumptionSet> = solver
            .extensions(&bottom.abaf, sem)?
            .iter()
            .map(|e| bottom.to_parent(e))
            .collect();
        let parts: Vec<Vec<AssumptionSet>> = firsts
            .par_iter()
            .map(|e1| {
                let top = self.modification(e1).sub;
                Ok(solver
                    .extensions(&top.abaf, sem)?
                    .iter()
                    .map(|e2| top.to_parent(e2).union(e1).copied().collect())
                    .collect())
            })
            .collect::<Result<_>>()?;
        let merged: BTreeSet<AssumptionSet> = parts.into_iter().flatten().collect();
        Ok(merged.into_iter().collect())
    }
}

pub(crate) fn membership(len: usize, idx: &[usize]) -> Vec<bool> {
    let mut v = vec![false; len];
    for &i in idx {
        v[i] = true;
    }
    v
}

/// `sem`-extensions of `abaf` computed through the splitting at `s`.
pub fn split_solve(
    abaf: &Abaf,
    s: &BTreeSet<AtomId>,
    sem: Semantics,
) -> Result<Vec<AssumptionSet>> {
    if !abaf.is_flat() {
        return Err(Error::NonFlat("splitting requires a flat framework".into()));
    }
    make_splitting(abaf, s)?.solve(sem, &Oracle::default())
}
