//! Argumentation frameworks with collective attacks.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::semantics::engine::{self, Evaluator, Mask};
use crate::semantics::Semantics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgId(pub u32);

impl ArgId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ArgId {
    fn from(i: usize) -> Self {
        ArgId(i as u32)
    }
}

pub type ArgSet = BTreeSet<ArgId>;

/// An attack from a nonempty set of arguments on a single argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack {
    pub tail: ArgSet,
    pub head: ArgId,
}

impl Attack {
    pub fn new(tail: impl IntoIterator<Item = ArgId>, head: ArgId) -> Self {
        Attack {
            tail: tail.into_iter().collect(),
            head,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Setaf {
    names: Vec<String>,
    attacks: Vec<Attack>,
}

impl Setaf {
    /// Builds a SETAF; exact duplicate attacks are dropped.
    pub fn new(names: Vec<String>, attacks: impl IntoIterator<Item = Attack>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("invalid argument name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let n = names.len();
        let mut unique = HashSet::new();
        let mut kept = Vec::new();
        for attack in attacks {
            if let Some(bad) = attack
                .tail
                .iter()
                .chain([&attack.head])
                .find(|a| a.index() >= n)
            {
                return Err(Error::UnknownAtom(format!("#{}", bad.0)));
            }
            if attack.tail.is_empty() {
                return Err(Error::EmptyTail(names[attack.head.index()].clone()));
            }
            if unique.insert(attack.clone()) {
                kept.push(attack);
            }
        }
        Ok(Setaf {
            names,
            attacks: kept,
        })
    }

    pub fn builder() -> SetafBuilder {
        SetafBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn args(&self) -> impl Iterator<Item = ArgId> + '_ {
        (0..self.names.len()).map(ArgId::from)
    }

    pub fn name(&self, arg: ArgId) -> &str {
        &self.names[arg.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arg_id(&self, name: &str) -> Option<ArgId> {
        self.names.iter().position(|n| n == name).map(ArgId::from)
    }

    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<ArgSet> {
        names
            .into_iter()
            .map(|n| {
                self.arg_id(n)
                    .ok_or_else(|| Error::UnknownAtom(n.to_string()))
            })
            .collect()
    }

    pub fn attacks(&self) -> &[Attack] {
        &self.attacks
    }

    /// Arguments attacked by `set` through the attacks accepted by `allow`,
    /// and the range `set ∪ attacked`.
    pub fn range(&self, set: &ArgSet, allow: Option<&dyn Fn(usize) -> bool>) -> (ArgSet, ArgSet) {
        let attacked: ArgSet = self
            .attacks
            .iter()
            .enumerate()
            .filter(|(i, att)| allow.is_none_or(|f| f(*i)) && att.tail.is_subset(set))
            .map(|(_, att)| att.head)
            .collect();
        let range = attacked.union(set).copied().collect();
        (attacked, range)
    }

    /// Edges `t -> h` for every attack `(T, h)` with `t ∈ T`, sorted.
    pub fn primal_graph(&self) -> Vec<(ArgId, ArgId)> {
        let edges: BTreeSet<(ArgId, ArgId)> = self
            .attacks
            .iter()
            .flat_map(|att| att.tail.iter().map(move |&t| (t, att.head)))
            .collect();
        edges.into_iter().collect()
    }

    /// Drops attacks whose tail strictly contains another tail on the same
    /// head and sorts the rest.
    pub fn normalized(&self) -> Setaf {
        let mut attacks: Vec<Attack> = self
            .attacks
            .iter()
            .filter(|a| {
                !self.attacks.iter().any(|b| {
                    b.head == a.head && b.tail.len() < a.tail.len() && b.tail.is_subset(&a.tail)
                })
            })
            .cloned()
            .collect();
        attacks.sort();
        Setaf {
            names: self.names.clone(),
            attacks,
        }
    }

    /// Attacks rendered by name, for order-insensitive comparisons.
    pub fn attack_strings(&self) -> BTreeSet<String> {
        self.attacks
            .iter()
            .map(|a| self.display_attack(a))
            .collect()
    }

    pub fn display_attack(&self, attack: &Attack) -> String {
        let tail: Vec<&str> = attack.tail.iter().map(|&t| self.name(t)).collect();
        format!("({{{}}},{})", tail.join(","), self.name(attack.head))
    }

    pub fn display_set<'a>(&self, set: impl IntoIterator<Item = &'a ArgId>) -> String {
        let names: Vec<&str> = set.into_iter().map(|&a| self.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for Setaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arguments: {}", self.names.join(" "))?;
        for attack in &self.attacks {
            writeln!(f, "  {}", self.display_attack(attack))?;
        }
        Ok(())
    }
}

#[derive(Debug, Default, Clone)]
pub struct SetafBuilder {
    names: Vec<String>,
    index: HashMap<String, ArgId>,
    attacks: Vec<Attack>,
}

impl SetafBuilder {
    fn intern(&mut self, name: &str) -> ArgId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = ArgId::from(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn arg(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    pub fn attack<'a>(mut self, tail: impl IntoIterator<Item = &'a str>, head: &str) -> Self {
        let tail: Vec<ArgId> = tail.into_iter().map(|t| self.intern(t)).collect();
        let head = self.intern(head);
        self.attacks.push(Attack::new(tail, head));
        self
    }

    pub fn build(self) -> Result<Setaf> {
        Setaf::new(self.names, self.attacks)
    }
}

/// A SETAF carved out of a parent one; `origin[i]` is the parent id of local
/// argument `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubSetaf {
    pub sf: Setaf,
    pub origin: Vec<ArgId>,
}

impl SubSetaf {
    /// Restriction of `parent` to `args` with the given parent attacks,
    /// whose arguments must all lie in `args`.
    pub(crate) fn induced(
        parent: &Setaf,
        args: &ArgSet,
        attacks: impl IntoIterator<Item = Attack>,
    ) -> Self {
        let origin: Vec<ArgId> = args.iter().copied().collect();
        let local: HashMap<ArgId, ArgId> = origin
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, ArgId::from(i)))
            .collect();
        let names = origin.iter().map(|&p| parent.name(p).to_string()).collect();
        let attacks = attacks.into_iter().map(|att| Attack {
            tail: att.tail.iter().map(|t| local[t]).collect(),
            head: local[&att.head],
        });
        SubSetaf {
            sf: Setaf::new(names, attacks).expect("restriction of a valid SETAF"),
            origin,
        }
    }

    pub fn to_parent(&self, set: &ArgSet) -> ArgSet {
        set.iter().map(|a| self.origin[a.index()]).collect()
    }

    pub fn from_parent(&self, set: &ArgSet) -> ArgSet {
        self.origin
            .iter()
            .enumerate()
            .filter(|(_, p)| set.contains(p))
            .map(|(i, _)| ArgId::from(i))
            .collect()
    }
}

struct SetafEval {
    tails: Vec<Vec<Mask>>,
}

impl SetafEval {
    fn new(sf: &Setaf) -> Self {
        let mut tails = vec![Vec::new(); sf.len()];
        for att in &sf.attacks {
            tails[att.head.index()].push(mask(&att.tail));
        }
        SetafEval { tails }
    }
}

fn mask(set: &ArgSet) -> Mask {
    set.iter().fold(0, |m, a| m | 1 << a.index())
}

fn unmask(m: Mask) -> ArgSet {
    (0..64)
        .filter(|i| m >> i & 1 == 1)
        .map(ArgId::from)
        .collect()
}

impl Evaluator for SetafEval {
    fn len(&self) -> usize {
        self.tails.len()
    }

    fn attacked(&self, set: Mask) -> Mask {
        (0..self.len())
            .filter(|&i| self.tails[i].iter().any(|&t| t & !set == 0))
            .fold(0, |m, i| m | 1 << i)
    }

    fn attackers(&self, element: usize) -> &[Mask] {
        &self.tails[element]
    }
}

pub fn check_extension(sf: &Setaf, set: &ArgSet, sem: Semantics) -> Result<bool> {
    if let Some(bad) = set.iter().find(|a| a.index() >= sf.len()) {
        return Err(Error::UnknownAtom(format!("#{}", bad.0)));
    }
    engine::check_guard(sf.len(), 63)?;
    engine::check(&SetafEval::new(sf), mask(set), sem)
}

/// Every `sem`-extension of `sf`, sorted.
pub fn enumerate_extensions(sf: &Setaf, sem: Semantics, guard: usize) -> Result<Vec<ArgSet>> {
    engine::check_guard(sf.len(), guard)?;
    let mut out: Vec<ArgSet> = engine::enumerate(&SetafEval::new(sf), sem)
        .into_iter()
        .map(unmask)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Setaf;

    pub(crate) fn running() -> Setaf {
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::DEFAULT_GUARD;

    #[test]
    fn running_example_preferred() {
        let sf = fixtures::running();
        let awz = sf.set(["a", "w", "z"]).unwrap();
        assert!(check_extension(&sf, &awz, Semantics::Prf).unwrap());
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Prf, DEFAULT_GUARD).unwrap(),
            vec![awz]
        );
    }

    #[test]
    fn running_example_has_no_stable_extension() {
        let sf = fixtures::running();
        assert!(enumerate_extensions(&sf, Semantics::Stb, DEFAULT_GUARD)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn self_attacker_excluded() {
        let sf = Setaf::builder()
            .arg("a")
            .attack(["b"], "b")
            .build()
            .unwrap();
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Prf, DEFAULT_GUARD).unwrap(),
            vec![sf.set(["a"]).unwrap()]
        );
    }

    #[test]
    fn second_part_of_split_example() {
        let sf = Setaf::builder()
            .arg("w")
            .arg("x")
            .arg("y")
            .arg("z")
            .attack(["w"], "x")
            .attack(["x"], "y")
            .attack(["y", "z"], "y")
            .build()
            .unwrap();
        assert!(check_extension(&sf, &sf.set(["w", "z"]).unwrap(), Semantics::Prf).unwrap());
        assert!(!check_extension(&sf, &sf.set(["w"]).unwrap(), Semantics::Prf).unwrap());
    }

    #[test]
    fn attack_free_framework_accepts_everything() {
        let sf = Setaf::builder().arg("p").arg("q").build().unwrap();
        let all = sf.set(["p", "q"]).unwrap();
        for sem in [
            Semantics::Stb,
            Semantics::Prf,
            Semantics::Grd,
            Semantics::Com,
        ] {
            assert_eq!(
                enumerate_extensions(&sf, sem, DEFAULT_GUARD).unwrap(),
                vec![all.clone()]
            );
        }
    }

    #[test]
    fn range_in_running_example() {
        let sf = fixtures::running();
        let (attacked, _) = sf.range(&sf.set(["a"]).unwrap(), None);
        assert_eq!(attacked, sf.set(["v"]).unwrap());
        let (attacked, range) = sf.range(&sf.set(["a", "w"]).unwrap(), None);
        assert_eq!(attacked, sf.set(["v", "x"]).unwrap());
        assert_eq!(range, sf.set(["a", "v", "w", "x"]).unwrap());
        assert!(sf.range(&ArgSet::new(), None).0.is_empty());
    }

    #[test]
    fn primal_graph_of_running_example() {
        let sf = fixtures::running();
        let edges: BTreeSet<(String, String)> = sf
            .primal_graph()
            .into_iter()
            .map(|(t, h)| (sf.name(t).to_string(), sf.name(h).to_string()))
            .collect();
        let expected: BTreeSet<(String, String)> = [
            ("a", "v"),
            ("a", "x"),
            ("w", "x"),
            ("x", "y"),
            ("b", "b"),
            ("b", "y"),
            ("z", "y"),
        ]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .into();
        assert_eq!(edges, expected);
    }

    #[test]
    fn joint_attack_primal_edges() {
        let sf = Setaf::builder().attack(["p", "q"], "r").build().unwrap();
        assert_eq!(sf.primal_graph().len(), 2);
    }

    #[test]
    fn empty_tail_rejected() {
        let err = Setaf::new(vec!["a".into()], [Attack::new([], ArgId(0))]).unwrap_err();
        assert_eq!(err, Error::EmptyTail("a".into()));
    }

    #[test]
    fn normalization_drops_superset_tails() {
        let sf = Setaf::builder()
            .attack(["a"], "c")
            .attack(["a", "b"], "c")
            .attack(["b"], "a")
            .build()
            .unwrap();
        assert_eq!(sf.normalized().attacks().len(), 2);
        for sem in Semantics::ALL {
            assert_eq!(
                enumerate_extensions(&sf, sem, DEFAULT_GUARD).unwrap(),
                enumerate_extensions(&sf.normalized(), sem, DEFAULT_GUARD).unwrap()
            );
        }
    }

    #[test]
    fn dung_af_by_hand() {
        // a <-> b, b -> c
        let sf = Setaf::builder()
            .attack(["a"], "b")
            .attack(["b"], "a")
            .attack(["b"], "c")
            .build()
            .unwrap();
        let sets = |names: &[&[&str]]| -> Vec<ArgSet> {
            let mut v: Vec<ArgSet> = names
                .iter()
                .map(|n| sf.set(n.iter().copied()).unwrap())
                .collect();
            v.sort();
            v
        };
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Grd, 20).unwrap(),
            sets(&[&[]])
        );
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Stb, 20).unwrap(),
            sets(&[&["a", "c"], &["b"]])
        );
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Com, 20).unwrap(),
            sets(&[&[], &["a", "c"], &["b"]])
        );
        assert_eq!(
            enumerate_extensions(&sf, Semantics::Adm, 20).unwrap(),
            sets(&[&[], &["a"], &["a", "c"], &["b"]])
        );
    }
}
