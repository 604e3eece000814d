use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{Abaf, AssumptionSet, AtomId, SubAbaf, SubBuilder};

impl Abaf {
    /// Least superset of `set` containing the contrary of each of its
    /// assumptions and every assumption whose contrary it contains.
    pub fn atom_closure(&self, set: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        let mut out = set.clone();
        let mut stack: Vec<AtomId> = set.iter().copied().collect();
        while let Some(x) = stack.pop() {
            let linked = self
                .contrary(x)
                .into_iter()
                .chain(self.assumptions_with_contrary(x).iter().copied());
            for y in linked {
                if out.insert(y) {
                    stack.push(y);
                }
            }
        }
        out
    }

    /// The sub-framework induced by an atom-closed set: rules whose head and
    /// body lie inside `set`, with the assumptions of `set`.
    pub fn projection(&self, set: &BTreeSet<AtomId>) -> Result<SubAbaf> {
        if let Some(&missing) = self.atom_closure(set).difference(set).next() {
            return Err(Error::NotAtomClosed(self.name(missing).into()));
        }
        let mut sub = SubBuilder::new(self, set.iter().copied());
        for a in self.assumptions().iter().filter(|a| set.contains(a)) {
            sub.keep_assumption(*a);
        }
        for rule in &self.rules {
            if set.contains(&rule.head) && rule.body.is_subset(set) {
                sub.parent_rule(rule.head, rule.body.iter().copied());
            }
        }
        Ok(sub.build())
    }

    /// True iff every minimal derivation of the contrary of a member of `set`
    /// uses only assumptions from `set`.
    pub fn is_uninfluenced(&self, set: &AssumptionSet) -> bool {
        let table = self.minimal_supports();
        set.iter().all(|&b| {
            table
                .get(self.contrary(b).expect("not an assumption"))
                .iter()
                .all(|t| t.is_subset(set))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn projection_onto_bottom_of_running_example() {
        let d = fixtures::running();
        let s = d.set(["a", "b", "c_a", "c_b", "p"]).unwrap();
        let sub = d.projection(&s).unwrap();
        let expected: BTreeSet<String> = ["c_b <- b", "p <- a"].map(String::from).into();
        assert_eq!(sub.abaf.rule_strings(), expected);
        assert_eq!(sub.abaf.assumptions().len(), 2);
    }

    #[test]
    fn projection_onto_everything_is_identity() {
        let d = fixtures::running();
        let all: BTreeSet<AtomId> = d.atoms().collect();
        let sub = d.projection(&all).unwrap();
        assert_eq!(sub.abaf, d);
    }

    #[test]
    fn projection_onto_single_pair() {
        let d = fixtures::running();
        let sub = d.projection(&d.set(["w", "c_w"]).unwrap()).unwrap();
        assert_eq!(sub.abaf.assumptions().len(), 1);
        assert!(sub.abaf.rules().is_empty());
    }

    #[test]
    fn projection_requires_atom_closure() {
        let d = fixtures::running();
        let err = d.projection(&d.set(["a"]).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotAtomClosed("c_a".into()));
    }

    #[test]
    fn atom_closure_follows_shared_contraries() {
        let d = Abaf::builder()
            .assumption("a", "n")
            .assumption("b", "n")
            .assumption("c", "c_c")
            .build()
            .unwrap();
        let closed = d.atom_closure(&d.set(["a"]).unwrap());
        assert_eq!(closed, d.set(["a", "b", "n"]).unwrap());
    }

    #[test]
    fn influence() {
        let d = fixtures::running();
        assert!(d.is_uninfluenced(&d.set(["a", "b"]).unwrap()));
        assert!(!d.is_uninfluenced(&d.set(["y"]).unwrap()));
        assert!(d.is_uninfluenced(&AssumptionSet::new()));
    }
}
