//! Quasi-splittings: splitting sets that tolerate bottom rules depending on
//! top assumptions, at the price of guessing those assumptions' status.
//! Stable semantics only.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::aba::{Abaf, AssumptionSet, AtomId, Rule, SubAbaf, SubBuilder};
use crate::error::{Error, Result};
use crate::semantics::Semantics;

use super::aba::check_closed;
use super::solver::{AbaSolver, Oracle};

#[derive(Debug, Clone)]
pub struct QuasiSplitting<'a> {
    base: &'a Abaf,
    s: BTreeSet<AtomId>,
    vulnerabilities: AssumptionSet,
}

/// The bottom enlarged by the vulnerabilities, each paired with a fresh
/// marker assumption `b'` asserting that `b` is out.
#[derive(Debug, Clone)]
pub struct BottomExpansion {
    pub sub: SubAbaf,
    /// `(local marker b', parent vulnerability b)`.
    pub markers: Vec<(AtomId, AtomId)>,
}

impl BottomExpansion {
    pub fn marker_of(&self, b: AtomId) -> Option<AtomId> {
        self.markers.iter().find(|(_, v)| *v == b).map(|(m, _)| *m)
    }
}

/// Validates `s` as a quasi-splitting: atom-closed, and the non-assumption
/// body atoms of every rule with head in `s` lie in `s`.
pub fn make_quasi_splitting<'a>(
    abaf: &'a Abaf,
    s: &BTreeSet<AtomId>,
) -> Result<QuasiSplitting<'a>> {
    check_closed(abaf, s)?;
    let mut vulnerabilities = AssumptionSet::new();
    for (i, rule) in abaf.rules().iter().enumerate() {
        if !s.contains(&rule.head) {
            continue;
        }
        for &b in &rule.body {
            if s.contains(&b) {
                continue;
            }
            if !abaf.is_assumption(b) {
                return Err(Error::NonAssumptionBodyOut(abaf.display_rule(rule)));
            }
            let contrary = abaf.contrary(b).unwrap();
            let attackable = abaf
                .rules()
                .iter()
                .enumerate()
                .any(|(j, r)| j != i && r.head == contrary);
            if attackable {
                vulnerabilities.insert(b);
            }
        }
    }
    Ok(QuasiSplitting {
        base: abaf,
        s: s.clone(),
        vulnerabilities,
    })
}

impl<'a> QuasiSplitting<'a> {
    pub fn base(&self) -> &'a Abaf {
        self.base
    }

    pub fn set(&self) -> &BTreeSet<AtomId> {
        &self.s
    }

    /// Top assumptions that bottom rules depend on and that can be attacked.
    pub fn vulnerabilities(&self) -> &AssumptionSet {
        &self.vulnerabilities
    }

    pub fn k(&self) -> usize {
        self.vulnerabilities.len()
    }

    /// Bottom language: the set, the vulnerabilities and their contraries.
    fn language(&self) -> BTreeSet<AtomId> {
        let mut out = self.s.clone();
        for &b in &self.vulnerabilities {
            out.insert(b);
            out.insert(self.base.contrary(b).unwrap());
        }
        out
    }

    pub fn bottom_expansion(&self) -> BottomExpansion {
        let language = self.language();
        let mut sub = SubBuilder::new(self.base, language.iter().copied());
        for &a in self.base.assumptions() {
            if self.s.contains(&a) || self.vulnerabilities.contains(&a) {
                sub.keep_assumption(a);
            }
        }
        for rule in self.base.rules() {
            if self.s.contains(&rule.head) {
                let body = rule.body.iter().copied().filter(|b| language.contains(b));
                sub.parent_rule(rule.head, body);
            }
        }
        let mut markers = Vec::new();
        for &b in &self.vulnerabilities {
            let name = self.base.name(b);
            let marker = sub.fresh(&format!("{name}'"));
            let marker_contrary = sub.fresh(&format!("c_{name}'"));
            sub.assume(marker, marker_contrary);
            let contrary = sub.local(self.base.contrary(b).unwrap());
            sub.rule(Rule::new(contrary, [marker]));
            sub.rule(Rule::new(marker_contrary, [sub.local(b)]));
            markers.push((marker, b));
        }
        BottomExpansion {
            sub: sub.build(),
            markers,
        }
    }

    /// The top reduced by the bottom extension `e1` (local ids of the
    /// expansion), with `b <-` for each accepted vulnerability and the loop
    /// `c(b) <- b` for each vulnerability whose marker is accepted.
    pub fn top_constrained(&self, bottom: &BottomExpansion, e1: &AssumptionSet) -> SubAbaf {
        let derived: BTreeSet<AtomId> = bottom
            .sub
            .to_parent(&bottom.sub.abaf.theory_closure(e1))
            .into_iter()
            .filter(|a| self.s.contains(a))
            .collect();
        let mut sub = SubBuilder::new(self.base, self.base.atoms().filter(|a| !self.s.contains(a)));
        for &a in self.base.assumptions() {
            if !self.s.contains(&a) {
                sub.keep_assumption(a);
            }
        }
        for rule in self.base.rules() {
            if self.s.contains(&rule.head) {
                continue;
            }
            let (inside, outside): (Vec<AtomId>, Vec<AtomId>) =
                rule.body.iter().partition(|b| self.s.contains(b));
            if inside.iter().all(|b| derived.contains(b)) {
                sub.parent_rule(rule.head, outside);
            }
        }
        let accepted = bottom.sub.to_parent(e1);
        for &b in self.vulnerabilities.intersection(&accepted) {
            sub.parent_rule(b, []);
        }
        for &(marker, b) in &bottom.markers {
            if e1.contains(&marker) {
                sub.parent_rule(self.base.contrary(b).unwrap(), [b]);
            }
        }
        sub.build()
    }

    /// The bottom extension that reconstructs the stable extension `e` of
    /// the base framework: `e` restricted to the bottom, plus the marker of
    /// every vulnerability outside `e`.
    pub fn witness(&self, bottom: &BottomExpansion, e: &AssumptionSet) -> AssumptionSet {
        let mut kept: AssumptionSet = e
            .iter()
            .copied()
            .filter(|a| self.s.contains(a) || self.vulnerabilities.contains(a))
            .collect();
        kept = bottom.sub.from_parent(&kept);
        for &(marker, b) in &bottom.markers {
            if !e.contains(&b) {
                kept.insert(marker);
            }
        }
        kept
    }

    pub fn solve(&self, solver: &dyn AbaSolver) -> Result<Vec<AssumptionSet>> {
        let bottom = self.bottom_expansion();
        let firsts = solver.extensions(&bottom.sub.abaf, Semantics::Stb)?;
        let parts: Vec<Vec<AssumptionSet>> = firsts
            .par_iter()
            .map(|e1| {
                let kept: AssumptionSet = bottom
                    .sub
                    .to_parent(e1)
                    .into_iter()
                    .filter(|a| self.s.contains(a))
                    .collect();
                let top = self.top_constrained(&bottom, e1);
                Ok(solver
                    .extensions(&top.abaf, Semantics::Stb)?
                    .iter()
                    .map(|e2| top.to_parent(e2).union(&kept).copied().collect())
                    .collect())
            })
            .collect::<Result<_>>()?;
        let merged: BTreeSet<AssumptionSet> = parts.into_iter().flatten().collect();
        Ok(merged.into_iter().collect())
    }
}

/// Stable extensions of `abaf` computed through the quasi-splitting at `s`.
pub fn param_split_solve(abaf: &Abaf, s: &BTreeSet<AtomId>) -> Result<Vec<AssumptionSet>> {
    if !abaf.is_flat() {
        return Err(Error::NonFlat(
            "quasi-splitting requires a flat framework".into(),
        ));
    }
    make_quasi_splitting(abaf, s)?.solve(&Oracle::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aba::{enumerate_extensions, fixtures};
    use crate::split::aba::{make_splitting, split_solve};
    use crate::DEFAULT_GUARD;

    fn rules(set: &[&str]) -> BTreeSet<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    fn bottom_set(d: &Abaf) -> BTreeSet<AtomId> {
        d.set(["a", "c_a", "d", "c_d", "p"]).unwrap()
    }

    #[test]
    fn vulnerabilities() {
        let d = fixtures::quasi();
        let q = make_quasi_splitting(&d, &bottom_set(&d)).unwrap();
        assert_eq!(q.vulnerabilities(), &d.set(["b"]).unwrap());
        assert_eq!(q.k(), 1);
        assert!(!q.vulnerabilities().contains(&d.atom_id("c").unwrap()));
    }

    #[test]
    fn proper_splitting_has_no_vulnerabilities() {
        let d = fixtures::running();
        let s = d.set(["a", "b", "c_a", "c_b", "p"]).unwrap();
        assert!(make_splitting(&d, &s).is_ok());
        assert_eq!(make_quasi_splitting(&d, &s).unwrap().k(), 0);
    }

    #[test]
    fn non_assumption_outside_is_rejected() {
        let d = fixtures::quasi();
        let s = d.set(["a", "c_a"]).unwrap();
        assert_eq!(
            make_quasi_splitting(&d, &s).unwrap_err(),
            Error::NonAssumptionBodyOut("c_a <- c,p".into())
        );
    }

    #[test]
    fn expansion_of_quasi_example() {
        let d = fixtures::quasi();
        let q = make_quasi_splitting(&d, &bottom_set(&d)).unwrap();
        let bottom = q.bottom_expansion();
        assert_eq!(
            bottom.sub.abaf.rule_strings(),
            rules(&["c_d <- b", "c_a <- p", "p <- b", "c_b' <- b", "c_b <- b'"])
        );
        let b = bottom.sub.abaf.set(["b"]).unwrap();
        assert_eq!(
            bottom.sub.abaf.theory_closure(&b),
            bottom
                .sub
                .abaf
                .set(["b", "c_d", "c_b'", "p", "c_a"])
                .unwrap()
        );
        let stb =
            enumerate_extensions(&bottom.sub.abaf, Semantics::Stb, false, DEFAULT_GUARD).unwrap();
        let mut expected = vec![b, bottom.sub.abaf.set(["b'", "a", "d"]).unwrap()];
        expected.sort();
        assert_eq!(stb, expected);
    }

    #[test]
    fn constrained_tops_of_quasi_example() {
        let d = fixtures::quasi();
        let q = make_quasi_splitting(&d, &bottom_set(&d)).unwrap();
        let bottom = q.bottom_expansion();
        let local = |names: &[&str]| bottom.sub.abaf.set(names.iter().copied()).unwrap();
        let top = q.top_constrained(&bottom, &local(&["b"]));
        assert_eq!(top.abaf.rule_strings(), rules(&["b <-"]));
        let report = top.abaf.validate();
        assert!(!report.flat);
        assert_eq!(report.non_flat_witnesses.len(), 1);
        let top = q.top_constrained(&bottom, &local(&["b'", "a", "d"]));
        assert_eq!(top.abaf.rule_strings(), rules(&["c_b <-", "c_b <- b"]));
    }

    #[test]
    fn quasi_example_solve() {
        let d = fixtures::quasi();
        let expected = vec![d.set(["a", "c", "d"]).unwrap(), d.set(["b", "c"]).unwrap()];
        assert_eq!(param_split_solve(&d, &bottom_set(&d)).unwrap(), expected);
        assert_eq!(
            enumerate_extensions(&d, Semantics::Stb, false, DEFAULT_GUARD).unwrap(),
            expected
        );
    }

    #[test]
    fn witnesses_of_quasi_example() {
        let d = fixtures::quasi();
        let q = make_quasi_splitting(&d, &bottom_set(&d)).unwrap();
        let bottom = q.bottom_expansion();
        let w = q.witness(&bottom, &d.set(["b", "c"]).unwrap());
        assert_eq!(w, bottom.sub.abaf.set(["b"]).unwrap());
        let w = q.witness(&bottom, &d.set(["a", "c", "d"]).unwrap());
        assert_eq!(w, bottom.sub.abaf.set(["b'", "a", "d"]).unwrap());
    }

    #[test]
    fn zero_vulnerabilities_agree_with_plain_splitting() {
        let d = fixtures::running();
        let s = d.set(["a", "b", "c_a", "c_b", "p"]).unwrap();
        assert_eq!(
            param_split_solve(&d, &s).unwrap(),
            split_solve(&d, &s, Semantics::Stb).unwrap()
        );
    }
}
