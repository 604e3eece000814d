//! Assumption-based argumentation frameworks.
//!
//! An [`Abaf`] is a deductive system (sentences and rules) together with a
//! set of assumptions and a total contrary function. Atoms are identified by
//! dense [`AtomId`]s; every atom also carries a unique display name.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

mod derive;
mod oracle;
mod projection;

pub use derive::{SupportTable, ValidationReport};
pub use oracle::{check_extension, enumerate_extensions, grounded_fixpoint};

/// Dense index of a sentence in an [`Abaf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for AtomId {
    fn from(i: usize) -> Self {
        AtomId(i as u32)
    }
}

/// A set of assumptions, ordered by atom id.
pub type AssumptionSet = BTreeSet<AtomId>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: AtomId,
    pub body: BTreeSet<AtomId>,
}

impl Rule {
    pub fn new(head: AtomId, body: impl IntoIterator<Item = AtomId>) -> Self {
        Rule {
            head,
            body: body.into_iter().collect(),
        }
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abaf {
    names: Vec<String>,
    rules: Vec<Rule>,
    contrary: Vec<Option<AtomId>>,
    assumptions: Vec<AtomId>,
    // inverse of the contrary map; several assumptions may share a contrary
    alpha: Vec<Vec<AtomId>>,
    // rules indexed by the atoms of their bodies
    watchers: Vec<Vec<usize>>,
    flat: bool,
}

impl Abaf {
    /// Builds a framework from display names, `(assumption, contrary)` pairs
    /// and rules. Duplicate rules are dropped, keeping the first occurrence.
    pub fn new(
        names: Vec<String>,
        contraries: impl IntoIterator<Item = (AtomId, AtomId)>,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("invalid atom name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let check = |id: AtomId| {
            if id.index() < n {
                Ok(id)
            } else {
                Err(Error::UnknownAtom(format!("#{}", id.0)))
            }
        };

        let mut contrary = vec![None; n];
        for (a, c) in contraries {
            check(a)?;
            check(c)?;
            if contrary[a.index()].replace(c).is_some_and(|old| old != c) {
                return Err(Error::Validation(format!(
                    "assumption `{}` has two contraries",
                    names[a.index()]
                )));
            }
        }

        let mut unique = HashSet::new();
        let mut kept = Vec::new();
        for rule in rules {
            check(rule.head)?;
            for &b in &rule.body {
                check(b)?;
            }
            if unique.insert(rule.clone()) {
                kept.push(rule);
            }
        }

        let assumptions: Vec<AtomId> = (0..n)
            .filter(|&i| contrary[i].is_some())
            .map(AtomId::from)
            .collect();
        let mut alpha = vec![Vec::new(); n];
        for &a in &assumptions {
            alpha[contrary[a.index()].unwrap().index()].push(a);
        }
        let mut watchers = vec![Vec::new(); n];
        for (i, rule) in kept.iter().enumerate() {
            for &b in &rule.body {
                watchers[b.index()].push(i);
            }
        }
        let flat = kept.iter().all(|r| contrary[r.head.index()].is_none());

        Ok(Abaf {
            names,
            rules: kept,
            contrary,
            assumptions,
            alpha,
            watchers,
            flat,
        })
    }

    pub fn builder() -> AbafBuilder {
        AbafBuilder::default()
    }

    /// Number of atoms in the language.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.names.len()).map(AtomId::from)
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.names.iter().position(|n| n == name).map(AtomId::from)
    }

    /// Resolves a list of names into a set of atom ids.
    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<BTreeSet<AtomId>> {
        names
            .into_iter()
            .map(|n| {
                self.atom_id(n)
                    .ok_or_else(|| Error::UnknownAtom(n.to_string()))
            })
            .collect()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn assumptions(&self) -> &[AtomId] {
        &self.assumptions
    }

    pub fn is_assumption(&self, atom: AtomId) -> bool {
        self.contrary[atom.index()].is_some()
    }

    pub fn contrary(&self, atom: AtomId) -> Option<AtomId> {
        self.contrary[atom.index()]
    }

    /// Assumptions whose contrary is `atom`.
    pub fn assumptions_with_contrary(&self, atom: AtomId) -> &[AtomId] {
        &self.alpha[atom.index()]
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    pub(crate) fn watchers(&self, atom: AtomId) -> &[usize] {
        &self.watchers[atom.index()]
    }

    pub fn contraries_of<'a>(
        &'a self,
        set: impl IntoIterator<Item = &'a AtomId>,
    ) -> BTreeSet<AtomId> {
        set.into_iter().filter_map(|&a| self.contrary(a)).collect()
    }

    pub fn display_set<'a>(&self, set: impl IntoIterator<Item = &'a AtomId>) -> String {
        let names: Vec<&str> = set.into_iter().map(|&a| self.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn display_rule(&self, rule: &Rule) -> String {
        let mut body: Vec<&str> = rule.body.iter().map(|&b| self.name(b)).collect();
        body.sort_unstable();
        if body.is_empty() {
            format!("{} <-", self.name(rule.head))
        } else {
            format!("{} <- {}", self.name(rule.head), body.join(","))
        }
    }

    /// Rules rendered through [`Abaf::display_rule`], sorted.
    pub fn rule_strings(&self) -> BTreeSet<String> {
        self.rules.iter().map(|r| self.display_rule(r)).collect()
    }

    /// A copy of the framework with the given rules removed.
    pub fn without_rules(&self, drop: &[usize]) -> Abaf {
        let drop: HashSet<usize> = drop.iter().copied().collect();
        let rules = self
            .rules
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, r)| r.clone());
        Abaf::new(self.names.clone(), self.contrary_pairs(), rules)
            .expect("subset of a valid framework")
    }

    pub fn contrary_pairs(&self) -> Vec<(AtomId, AtomId)> {
        self.assumptions
            .iter()
            .map(|&a| (a, self.contrary[a.index()].unwrap()))
            .collect()
    }

    pub(crate) fn check_assumptions(&self, set: &AssumptionSet) -> Result<()> {
        match set
            .iter()
            .find(|&&a| a.index() >= self.len() || !self.is_assumption(a))
        {
            Some(&a) if a.index() < self.len() => Err(Error::NotAnAssumption(self.name(a).into())),
            Some(a) => Err(Error::UnknownAtom(format!("#{}", a.0))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Abaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let assumptions: Vec<String> = self
            .assumptions
            .iter()
            .map(|&a| format!("{}~{}", self.name(a), self.name(self.contrary(a).unwrap())))
            .collect();
        writeln!(f, "assumptions: {}", assumptions.join(" "))?;
        for rule in &self.rules {
            writeln!(f, "  {}", self.display_rule(rule))?;
        }
        Ok(())
    }
}

/// Name-based construction of frameworks.
///
/// ```
/// use splitkit::aba::Abaf;
/// let abaf = Abaf::builder()
///     .assumption("a", "c_a")
///     .assumption("b", "c_b")
///     .rule("c_b", ["a"])
///     .build()
///     .unwrap();
/// assert_eq!(abaf.assumptions().len(), 2);
/// ```
#[derive(Debug, Default, Clone)]
pub struct AbafBuilder {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
    contraries: Vec<(AtomId, AtomId)>,
    rules: Vec<Rule>,
}

impl AbafBuilder {
    fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = AtomId::from(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn atom(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    pub fn assumption(mut self, name: &str, contrary: &str) -> Self {
        let a = self.intern(name);
        let c = self.intern(contrary);
        self.contraries.push((a, c));
        self
    }

    pub fn rule<'a>(mut self, head: &str, body: impl IntoIterator<Item = &'a str>) -> Self {
        let head = self.intern(head);
        let body: Vec<AtomId> = body.into_iter().map(|b| self.intern(b)).collect();
        self.rules.push(Rule::new(head, body));
        self
    }

    pub fn build(self) -> Result<Abaf> {
        Abaf::new(self.names, self.contraries, self.rules)
    }
}

/// A framework derived from a parent one, with the id translation back to
/// the parent. Atoms introduced by the derivation map to `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubAbaf {
    pub abaf: Abaf,
    pub origin: Vec<Option<AtomId>>,
}

impl SubAbaf {
    /// Translates a set of local atoms into parent ids, dropping fresh atoms.
    pub fn to_parent(&self, set: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        set.iter().filter_map(|a| self.origin[a.index()]).collect()
    }

    pub fn local(&self, parent: AtomId) -> Option<AtomId> {
        self.origin
            .iter()
            .position(|&o| o == Some(parent))
            .map(AtomId::from)
    }

    /// Translates parent ids into local ids, dropping atoms not present.
    pub fn from_parent(&self, set: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        let map = self.local_map();
        set.iter().filter_map(|a| map.get(a).copied()).collect()
    }

    fn local_map(&self) -> HashMap<AtomId, AtomId> {
        self.origin
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.map(|p| (p, AtomId::from(i))))
            .collect()
    }

    /// Local atoms introduced by the derivation.
    pub fn fresh_atoms(&self) -> Vec<AtomId> {
        (0..self.origin.len())
            .filter(|&i| self.origin[i].is_none())
            .map(AtomId::from)
            .collect()
    }
}

/// Incremental construction of a [`SubAbaf`].
pub(crate) struct SubBuilder<'a> {
    parent: &'a Abaf,
    names: Vec<String>,
    taken: HashSet<String>,
    origin: Vec<Option<AtomId>>,
    local: Vec<Option<AtomId>>,
    contraries: Vec<(AtomId, AtomId)>,
    rules: Vec<Rule>,
}

impl<'a> SubBuilder<'a> {
    /// Starts from the given parent atoms, kept in parent id order.
    pub(crate) fn new(parent: &'a Abaf, language: impl IntoIterator<Item = AtomId>) -> Self {
        let mut keep: Vec<AtomId> = language.into_iter().collect();
        keep.sort();
        keep.dedup();
        let mut local = vec![None; parent.len()];
        let mut names = Vec::with_capacity(keep.len());
        let mut origin = Vec::with_capacity(keep.len());
        for (i, &p) in keep.iter().enumerate() {
            local[p.index()] = Some(AtomId::from(i));
            names.push(parent.name(p).to_string());
            origin.push(Some(p));
        }
        SubBuilder {
            parent,
            taken: parent.names.iter().cloned().collect(),
            names,
            origin,
            local,
            contraries: Vec::new(),
            rules: Vec::new(),
        }
    }

    pub(crate) fn local(&self, parent: AtomId) -> AtomId {
        self.local[parent.index()].expect("atom outside the sub-language")
    }

    /// Keeps the parent's assumption status for `parent`.
    pub(crate) fn keep_assumption(&mut self, parent: AtomId) {
        let c = self.parent.contrary(parent).expect("not an assumption");
        let pair = (self.local(parent), self.local(c));
        self.contraries.push(pair);
    }

    pub(crate) fn fresh(&mut self, base: &str) -> AtomId {
        let name = fresh_name(base, &self.taken);
        self.taken.insert(name.clone());
        self.names.push(name);
        self.origin.push(None);
        AtomId::from(self.names.len() - 1)
    }

    pub(crate) fn assume(&mut self, a: AtomId, c: AtomId) {
        self.contraries.push((a, c));
    }

    pub(crate) fn parent_rule(&mut self, head: AtomId, body: impl IntoIterator<Item = AtomId>) {
        let rule = Rule::new(
            self.local(head),
            body.into_iter().map(|b| self.local(b)).collect::<Vec<_>>(),
        );
        self.rules.push(rule);
    }

    pub(crate) fn rule(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    pub(crate) fn build(self) -> SubAbaf {
        let abaf = Abaf::new(self.names, self.contraries, self.rules)
            .expect("derived framework is well-formed");
        SubAbaf {
            abaf,
            origin: self.origin,
        }
    }
}

/// `base`, or `base_1`, `base_2`, ... whichever is not taken.
pub(crate) fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken.contains(n))
        .unwrap()
}
