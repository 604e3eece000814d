#![allow(dead_code)]

use std::collections::BTreeSet;

use splitkit::{Abaf, AtomId, Setaf};

/// Seven assumptions, one extra atom `p`; `{a,w,z}` is preferred.
pub fn running() -> Abaf {
    Abaf::builder()
        .assumption("a", "c_a")
        .assumption("b", "c_b")
        .assumption("v", "c_v")
        .assumption("w", "c_w")
        .assumption("x", "c_x")
        .assumption("y", "c_y")
        .assumption("z", "c_z")
        .atom("p")
        .rule("c_b", ["b"])
        .rule("p", ["a"])
        .rule("c_v", ["a"])
        .rule("c_x", ["p", "w"])
        .rule("c_y", ["x"])
        .rule("c_y", ["c_b", "z"])
        .build()
        .unwrap()
}

/// The SETAF instantiated from [`running`].
pub fn running_setaf() -> Setaf {
    Setaf::builder()
        .arg("a")
        .arg("b")
        .arg("v")
        .arg("w")
        .arg("x")
        .arg("y")
        .arg("z")
        .attack(["b"], "b")
        .attack(["a"], "v")
        .attack(["a", "w"], "x")
        .attack(["x"], "y")
        .attack(["b", "z"], "y")
        .build()
        .unwrap()
}

/// Four assumptions; `{a,c_a,d,c_d,p}` is a quasi-splitting with one
/// vulnerability.
pub fn quasi() -> Abaf {
    Abaf::builder()
        .assumption("a", "c_a")
        .assumption("b", "c_b")
        .assumption("c", "c_c")
        .assumption("d", "c_d")
        .atom("p")
        .rule("c_b", ["a"])
        .rule("c_d", ["b"])
        .rule("c_a", ["p", "c"])
        .rule("p", ["b"])
        .build()
        .unwrap()
}

/// Three assumptions where `a` attacks itself and `{a,b}` jointly attack `c`
/// through the intermediate atoms `p`, `q`, `s`.
pub fn joint() -> Abaf {
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

pub fn strings(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// A family of sets given by member names.
pub fn family(sets: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    sets.iter().map(|s| strings(s)).collect()
}

pub fn aba_names<'a>(
    d: &Abaf,
    sets: impl IntoIterator<Item = &'a BTreeSet<AtomId>>,
) -> BTreeSet<BTreeSet<String>> {
    sets.into_iter()
        .map(|e| e.iter().map(|&a| d.name(a).to_string()).collect())
        .collect()
}

pub fn setaf_names<'a>(
    sf: &Setaf,
    sets: impl IntoIterator<Item = &'a splitkit::ArgSet>,
) -> BTreeSet<BTreeSet<String>> {
    sets.into_iter()
        .map(|e| e.iter().map(|&a| sf.name(a).to_string()).collect())
        .collect()
}
