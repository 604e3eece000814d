//! Translations between flat ABA frameworks and SETAFs.

use std::collections::HashSet;

use crate::aba::{fresh_name, Abaf, AssumptionSet, AtomId, Rule};
use crate::error::{Error, Result};
use crate::setaf::{ArgId, Attack, Setaf};

/// The SETAF over the assumptions of `abaf` where `(T, a)` is an attack iff
/// `T` derives the contrary of `a`. By default only ⊆-minimal tails are
/// emitted; with `all_supports` every assumption set that is exactly the
/// leaf set of some derivation is.
///
/// Argument `i` of the result is the `i`-th assumption of `abaf`.
pub fn aba_to_setaf(abaf: &Abaf, all_supports: bool) -> Result<Setaf> {
    if !abaf.is_flat() {
        return Err(Error::NonFlat(
            "only flat frameworks can be instantiated".into(),
        ));
    }
    let assumptions = abaf.assumptions();
    let index = |a: &AtomId| ArgId::from(assumptions.binary_search(a).unwrap());
    let supports: Vec<Vec<AssumptionSet>> = if all_supports {
        abaf.derivation_leaf_sets()
    } else {
        let table = abaf.minimal_supports();
        abaf.atoms().map(|p| table.get(p).to_vec()).collect()
    };
    let names = assumptions
        .iter()
        .map(|&a| abaf.name(a).to_string())
        .collect();
    let mut attacks = Vec::new();
    for &a in assumptions {
        let contrary = abaf.contrary(a).unwrap();
        for tail in &supports[contrary.index()] {
            if tail.is_empty() {
                return Err(Error::EmptyTail(abaf.name(a).into()));
            }
            attacks.push(Attack::new(tail.iter().map(index), index(&a)));
        }
    }
    attacks.sort();
    Setaf::new(names, attacks)
}

/// The flat ABA framework with one assumption per argument, a fresh contrary
/// `c_<name>` for each, and one rule `c_h <- T` per attack `(T, h)`.
pub fn setaf_to_aba(sf: &Setaf) -> Abaf {
    let mut taken: HashSet<String> = sf.names().iter().cloned().collect();
    let mut names: Vec<String> = sf.names().to_vec();
    let n = sf.len();
    for i in 0..n {
        let name = fresh_name(&format!("c_{}", sf.names()[i]), &taken);
        taken.insert(name.clone());
        names.push(name);
    }
    let contraries = (0..n).map(|i| (AtomId::from(i), AtomId::from(n + i)));
    let rules = sf.attacks().iter().map(|att| {
        Rule::new(
            AtomId::from(n + att.head.index()),
            att.tail.iter().map(|t| AtomId::from(t.index())),
        )
    });
    Abaf::new(names, contraries, rules).expect("fresh names are unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aba::{enumerate_extensions, fixtures};
    use crate::semantics::{Semantics, DEFAULT_GUARD};
    use crate::setaf;
    use std::collections::BTreeSet;

    fn strings(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn sixth() -> Abaf {
        Abaf::builder()
            .assumption("a", "c_a")
            .assumption("b", "c_b")
            .assumption("c", "c_c")
            .atom("p")
            .atom("q")
            .atom("s")
            .rule("c_c", ["s", "q"])
            .rule("s", ["b"])
            .rule("q", ["p"])
            .rule("p", ["a"])
            .rule("c_a", ["a"])
            .build()
            .unwrap()
    }

    #[test]
    fn running_example_instantiation() {
        let sf = aba_to_setaf(&fixtures::running(), false).unwrap();
        assert_eq!(
            sf.attack_strings(),
            strings(&["({b},b)", "({a},v)", "({a,w},x)", "({x},y)", "({b,z},y)"])
        );
    }

    #[test]
    fn joint_attack_instantiation() {
        let sf = aba_to_setaf(&sixth(), false).unwrap();
        assert_eq!(sf.attack_strings(), strings(&["({a},a)", "({a,b},c)"]));
    }

    #[test]
    fn rule_free_framework_has_no_attacks() {
        let d = Abaf::builder().assumption("a", "c_a").build().unwrap();
        assert!(aba_to_setaf(&d, false).unwrap().attacks().is_empty());
    }

    #[test]
    fn unconditional_attack_cannot_be_instantiated() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .rule("c_a", [])
            .build()
            .unwrap();
        assert_eq!(aba_to_setaf(&d, false), Err(Error::EmptyTail("a".into())));
    }

    #[test]
    fn back_translation_of_running_setaf() {
        let sf = setaf::fixtures::running();
        let d = setaf_to_aba(&sf);
        assert_eq!(
            d.rule_strings(),
            strings(&[
                "c_b <- b",
                "c_v <- a",
                "c_x <- a,w",
                "c_y <- x",
                "c_y <- b,z"
            ])
        );
        assert!(d.is_flat());
        for sem in Semantics::ALL {
            let via_aba: Vec<Vec<String>> = enumerate_extensions(&d, sem, false, DEFAULT_GUARD)
                .unwrap()
                .iter()
                .map(|e| e.iter().map(|&a| d.name(a).to_string()).collect())
                .collect();
            let direct: Vec<Vec<String>> = setaf::enumerate_extensions(&sf, sem, DEFAULT_GUARD)
                .unwrap()
                .iter()
                .map(|e| e.iter().map(|&a| sf.name(a).to_string()).collect())
                .collect();
            assert_eq!(via_aba, direct, "{sem}");
        }
        assert_eq!(
            aba_to_setaf(&d, false).unwrap().normalized(),
            sf.normalized()
        );
    }

    #[test]
    fn contrary_names_avoid_collisions() {
        let sf = Setaf::builder().arg("a").arg("c_a").build().unwrap();
        let d = setaf_to_aba(&sf);
        assert_eq!(d.names(), ["a", "c_a", "c_a_1", "c_c_a"]);
    }

    #[test]
    fn all_supports_adds_redundant_tails() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .assumption("b", "c_b")
            .rule("c_b", ["a"])
            .rule("c_b", ["a", "b"])
            .build()
            .unwrap();
        assert_eq!(aba_to_setaf(&d, false).unwrap().attacks().len(), 1);
        let full = aba_to_setaf(&d, true).unwrap();
        assert_eq!(full.attacks().len(), 2);
        assert_eq!(full.normalized(), aba_to_setaf(&d, false).unwrap());
    }
}
