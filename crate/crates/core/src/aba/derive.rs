use std::collections::{BTreeSet, VecDeque};

use super::{Abaf, AssumptionSet, AtomId};

/// Minimal assumption sets deriving each atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTable {
    entries: Vec<Vec<AssumptionSet>>,
}

impl SupportTable {
    /// The ⊆-minimal supports of `atom`, in canonical order.
    pub fn get(&self, atom: AtomId) -> &[AssumptionSet] {
        &self.entries[atom.index()]
    }

    /// Whether some support of `atom` is contained in `set`.
    pub fn derives(&self, atom: AtomId, set: &AssumptionSet) -> bool {
        self.get(atom).iter().any(|t| t.is_subset(set))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub flat: bool,
    /// Indices of rules whose head is an assumption.
    pub non_flat_witnesses: Vec<usize>,
    /// Indices of rules that can never fire.
    pub dummy_rules: Vec<usize>,
}

impl Abaf {
    /// Forward chaining from `seeds` using only rules accepted by `allow`.
    pub(crate) fn chain(
        &self,
        seeds: impl IntoIterator<Item = AtomId>,
        allow: &dyn Fn(usize) -> bool,
    ) -> Vec<bool> {
        let mut derived = vec![false; self.len()];
        let mut missing: Vec<usize> = self.rules.iter().map(|r| r.body.len()).collect();
        let mut queue = VecDeque::new();
        for s in seeds {
            if !derived[s.index()] {
                derived[s.index()] = true;
                queue.push_back(s);
            }
        }
        for (i, rule) in self.rules.iter().enumerate() {
            if rule.body.is_empty() && allow(i) && !derived[rule.head.index()] {
                derived[rule.head.index()] = true;
                queue.push_back(rule.head);
            }
        }
        while let Some(atom) = queue.pop_front() {
            for &i in self.watchers(atom) {
                missing[i] -= 1;
                if missing[i] == 0 && allow(i) {
                    let head = self.rules[i].head;
                    if !derived[head.index()] {
                        derived[head.index()] = true;
                        queue.push_back(head);
                    }
                }
            }
        }
        derived
    }

    /// All atoms derivable from `set`.
    pub fn theory_closure(&self, set: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        to_set(&self.chain(set.iter().copied(), &|_| true))
    }

    /// All atoms derivable from `set` using the rules accepted by `allow`.
    pub fn theory_closure_with(
        &self,
        set: &BTreeSet<AtomId>,
        allow: &dyn Fn(usize) -> bool,
    ) -> BTreeSet<AtomId> {
        to_set(&self.chain(set.iter().copied(), allow))
    }

    /// Assumptions attacked by `set`, and its range `set ∪ attacked`.
    pub fn range(
        &self,
        set: &AssumptionSet,
        allow: Option<&dyn Fn(usize) -> bool>,
    ) -> (AssumptionSet, AssumptionSet) {
        let derived = match allow {
            Some(allow) => self.chain(set.iter().copied(), allow),
            None => self.chain(set.iter().copied(), &|_| true),
        };
        let attacked: AssumptionSet = self
            .assumptions
            .iter()
            .copied()
            .filter(|&a| derived[self.contrary(a).unwrap().index()])
            .collect();
        let range = attacked.union(set).copied().collect();
        (attacked, range)
    }

    pub fn minimal_supports(&self) -> SupportTable {
        self.minimal_supports_with(&|_| true)
    }

    pub fn minimal_supports_with(&self, allow: &dyn Fn(usize) -> bool) -> SupportTable {
        let entries = self.support_fixpoint(allow, true);
        SupportTable { entries }
    }

    /// Assumption sets that are the exact leaves of some derivation tree,
    /// without minimisation. Exponential; intended for small frameworks.
    pub(crate) fn derivation_leaf_sets(&self) -> Vec<Vec<AssumptionSet>> {
        self.support_fixpoint(&|_| true, false)
    }

    fn support_fixpoint(
        &self,
        allow: &dyn Fn(usize) -> bool,
        minimal: bool,
    ) -> Vec<Vec<AssumptionSet>> {
        let mut table: Vec<Vec<AssumptionSet>> = vec![Vec::new(); self.len()];
        for &a in &self.assumptions {
            table[a.index()].push(BTreeSet::from([a]));
        }
        loop {
            let mut changed = false;
            for (i, rule) in self.rules.iter().enumerate() {
                if !allow(i) {
                    continue;
                }
                let mut combos: Vec<AssumptionSet> = vec![BTreeSet::new()];
                for &b in &rule.body {
                    let mut next = Vec::new();
                    for c in &combos {
                        for t in &table[b.index()] {
                            let u: AssumptionSet = c.union(t).copied().collect();
                            if minimal {
                                insert_minimal(&mut next, u);
                            } else if !next.contains(&u) {
                                next.push(u);
                            }
                        }
                    }
                    combos = next;
                    if combos.is_empty() {
                        break;
                    }
                }
                let entry = &mut table[rule.head.index()];
                for c in combos {
                    changed |= if minimal {
                        insert_minimal(entry, c)
                    } else if entry.contains(&c) {
                        false
                    } else {
                        entry.push(c);
                        true
                    };
                }
            }
            if !changed {
                break;
            }
        }
        for entry in &mut table {
            entry.sort();
        }
        table
    }

    /// Flatness and dummy-rule diagnosis.
    ///
    /// A rule is a dummy when it can fire from no assumption set at all,
    /// i.e. some body atom is underivable even from the full assumption set.
    pub fn validate(&self) -> ValidationReport {
        let all: AssumptionSet = self.assumptions.iter().copied().collect();
        let derivable = self.chain(all, &|_| true);
        let non_flat_witnesses = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| self.is_assumption(r.head))
            .map(|(i, _)| i)
            .collect::<Vec<_>>();
        let dummy_rules = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.body.iter().any(|b| !derivable[b.index()]))
            .map(|(i, _)| i)
            .collect();
        ValidationReport {
            flat: non_flat_witnesses.is_empty(),
            non_flat_witnesses,
            dummy_rules,
        }
    }
}

fn to_set(derived: &[bool]) -> BTreeSet<AtomId> {
    derived
        .iter()
        .enumerate()
        .filter(|(_, &d)| d)
        .map(|(i, _)| AtomId::from(i))
        .collect()
}

/// Adds `set` to an antichain, keeping only ⊆-minimal members.
pub(crate) fn insert_minimal(antichain: &mut Vec<AssumptionSet>, set: AssumptionSet) -> bool {
    if antichain.iter().any(|t| t.is_subset(&set)) {
        return false;
    }
    antichain.retain(|t| !set.is_subset(t));
    antichain.push(set);
    true
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    fn names(abaf: &Abaf, set: &BTreeSet<AtomId>) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&a| abaf.name(a).to_string()).collect();
        v.sort();
        v
    }

    /// Backward-chaining derivability check, independent of the forward
    /// closure: depth-bounded search for a derivation tree.
    fn derivable_backward(abaf: &Abaf, set: &BTreeSet<AtomId>, goal: AtomId, depth: usize) -> bool {
        if set.contains(&goal) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        abaf.rules().iter().any(|r| {
            r.head == goal
                && r.body
                    .iter()
                    .all(|&b| derivable_backward(abaf, set, b, depth - 1))
        })
    }

    #[test]
    fn closure_of_a_in_running_example() {
        let d = fixtures::running();
        let th = d.theory_closure(&d.set(["a"]).unwrap());
        assert_eq!(names(&d, &th), ["a", "c_v", "p"]);
        for atom in d.atoms() {
            assert_eq!(
                th.contains(&atom),
                derivable_backward(&d, &d.set(["a"]).unwrap(), atom, d.len())
            );
        }
    }

    #[test]
    fn closure_of_empty_set_has_no_facts() {
        let d = fixtures::running();
        assert!(d.theory_closure(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn supports_in_running_example() {
        let d = fixtures::running();
        let table = d.minimal_supports();
        let c_x = d.atom_id("c_x").unwrap();
        assert_eq!(table.get(c_x), &[d.set(["a", "w"]).unwrap()]);
        let c_y = d.atom_id("c_y").unwrap();
        let mut expected = vec![d.set(["x"]).unwrap(), d.set(["b", "z"]).unwrap()];
        expected.sort();
        assert_eq!(table.get(c_y), expected.as_slice());
    }

    #[test]
    fn supports_agree_with_subset_enumeration() {
        let d = fixtures::running();
        let table = d.minimal_supports();
        let assumptions = d.assumptions().to_vec();
        for atom in d.atoms() {
            let mut oracle: Vec<AssumptionSet> = Vec::new();
            for mask in 0u32..(1 << assumptions.len()) {
                let set: AssumptionSet = (0..assumptions.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| assumptions[i])
                    .collect();
                if derivable_backward(&d, &set, atom, d.len()) {
                    insert_minimal(&mut oracle, set);
                }
            }
            oracle.sort();
            assert_eq!(table.get(atom), oracle.as_slice(), "atom {}", d.name(atom));
        }
    }

    #[test]
    fn range_in_running_example() {
        let d = fixtures::running();
        let (attacked, range) = d.range(&d.set(["a"]).unwrap(), None);
        assert_eq!(names(&d, &attacked), ["v"]);
        assert_eq!(names(&d, &range), ["a", "v"]);
        let (attacked, _) = d.range(&BTreeSet::new(), None);
        assert!(attacked.is_empty());
        let (attacked, _) = d.range(&d.set(["b", "z"]).unwrap(), None);
        assert!(attacked.is_superset(&d.set(["b", "y"]).unwrap()));
    }

    #[test]
    fn range_respects_rule_filter() {
        let d = fixtures::running();
        let (attacked, _) = d.range(&d.set(["a"]).unwrap(), Some(&|i| i != 2));
        assert!(attacked.is_empty());
    }

    #[test]
    fn validation_of_running_example() {
        let report = fixtures::running().validate();
        assert!(report.flat);
        assert!(report.dummy_rules.is_empty());
    }

    #[test]
    fn dummy_and_non_flat_rules_reported() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .assumption("b", "c_b")
            .atom("q")
            .rule("c_a", ["q"])
            .rule("b", [])
            .build()
            .unwrap();
        let report = d.validate();
        assert!(!report.flat);
        assert_eq!(report.non_flat_witnesses, vec![1]);
        assert_eq!(report.dummy_rules, vec![0]);
        assert!(d.without_rules(&report.dummy_rules).rules().len() == 1);
    }

    #[test]
    fn leaf_sets_include_non_minimal_derivations() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .assumption("b", "c_b")
            .rule("c_a", ["a"])
            .rule("c_a", ["a", "b"])
            .build()
            .unwrap();
        let c_a = d.atom_id("c_a").unwrap();
        assert_eq!(d.minimal_supports().get(c_a).len(), 1);
        assert_eq!(d.derivation_leaf_sets()[c_a.index()].len(), 2);
    }
}
