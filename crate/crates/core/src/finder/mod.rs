//! Automatic computation of splittings from the dependency structure of a
//! framework.
//!
//! Proper splittings are predecessor-closed unions of strongly connected
//! components of the dependency graph (ABA) or the primal graph (SETAF).
//! Among those, the finder prefers the one whose size is closest to a target
//! fraction of the whole. Quasi-splittings are found by a branch and bound
//! over minimum cuts, counting one unit per vulnerable assumption.

mod flow;
mod graph;

use std::collections::BTreeSet;

pub use graph::{condensation, Condensation, Digraph};

use crate::aba::{Abaf, AtomId};
use crate::error::{Error, Result};
use crate::setaf::{ArgId, ArgSet, Setaf};
use crate::split::aba::make_splitting;
use crate::split::quasi::{make_quasi_splitting, QuasiSplitting};
use crate::split::setaf::make_splitting as make_setaf_splitting;

use flow::{Network, INF};

/// Ideals are enumerated exactly up to this many; beyond it only the
/// prefixes of a topological order are considered.
pub const IDEAL_CAP: usize = 1 << 14;

/// Search-tree node budget of the quasi-splitting branch and bound.
pub const QUASI_NODE_BUDGET: usize = 200_000;

/// Edges from each body atom to the head of its rule, and both directions
/// between every assumption and its contrary.
pub fn dependency_graph(abaf: &Abaf) -> Digraph {
    let mut edges = BTreeSet::new();
    for rule in abaf.rules() {
        for b in &rule.body {
            edges.insert((b.index(), rule.head.index()));
        }
    }
    for &a in abaf.assumptions() {
        let c = abaf.contrary(a).unwrap();
        edges.insert((a.index(), c.index()));
        edges.insert((c.index(), a.index()));
    }
    Digraph {
        labels: abaf.names().to_vec(),
        edges,
    }
}

pub fn primal_graph(sf: &Setaf) -> Digraph {
    Digraph {
        labels: sf.names().to_vec(),
        edges: sf
            .primal_graph()
            .into_iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect(),
    }
}

/// Nontrivial predecessor-closed component sets, best first: closest weight
/// to `fraction` of the total, then smaller, then lexicographically by
/// node set.
pub fn ranked_candidates(c: &Condensation, fraction: f64) -> Vec<BTreeSet<usize>> {
    let total: usize = c.weights.iter().sum();
    let target = fraction * total as f64;
    let mut pool: BTreeSet<Vec<usize>> = c.prefixes().into_iter().collect();
    if let Some(ideals) = c.ideals(IDEAL_CAP) {
        pool.extend(ideals);
    }
    let mut ranked: Vec<(f64, usize, BTreeSet<usize>)> = pool
        .into_iter()
        .map(|comps| {
            let weight: usize = comps.iter().map(|&i| c.weights[i]).sum();
            (weight, c.nodes_of(&comps))
        })
        .filter(|(w, _)| *w > 0 && *w < total)
        .map(|(w, nodes)| ((w as f64 - target).abs(), w, nodes))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    ranked.into_iter().map(|(_, _, nodes)| nodes).collect()
}

fn to_atoms(nodes: &BTreeSet<usize>) -> BTreeSet<AtomId> {
    nodes.iter().map(|&i| AtomId::from(i)).collect()
}

/// Candidate splitting sets of `abaf`, best first.
pub fn balanced_candidates(abaf: &Abaf, fraction: f64) -> Vec<BTreeSet<AtomId>> {
    let c = condensation(&dependency_graph(abaf));
    ranked_candidates(&c, fraction)
        .iter()
        .map(to_atoms)
        .collect()
}

/// The nontrivial splitting set whose size is closest to `fraction` of the
/// language.
pub fn find_balanced_splitting(abaf: &Abaf, fraction: f64) -> Result<BTreeSet<AtomId>> {
    let best = balanced_candidates(abaf, fraction)
        .into_iter()
        .next()
        .ok_or(Error::DegenerateSplit)?;
    make_splitting(abaf, &best)?;
    Ok(best)
}

pub fn setaf_candidates(sf: &Setaf, fraction: f64) -> Vec<ArgSet> {
    let c = condensation(&primal_graph(sf));
    ranked_candidates(&c, fraction)
        .into_iter()
        .map(|nodes| nodes.into_iter().map(ArgId::from).collect())
        .collect()
}

pub fn find_setaf_splitting(sf: &Setaf, fraction: f64) -> Result<ArgSet> {
    let best = setaf_candidates(sf, fraction)
        .into_iter()
        .next()
        .ok_or(Error::DegenerateSplit)?;
    make_setaf_splitting(sf, &best)?;
    Ok(best)
}

/// Quasi-splitting search space: atoms grouped by the assumption/contrary
/// relation, with the cut network over the groups.
struct QuasiNetwork {
    groups: Vec<Vec<AtomId>>,
    network: Network,
    source: usize,
    sink: usize,
}

impl QuasiNetwork {
    fn new(abaf: &Abaf) -> Self {
        let mut group_of = vec![usize::MAX; abaf.len()];
        let mut groups: Vec<Vec<AtomId>> = Vec::new();
        for atom in abaf.atoms() {
            if group_of[atom.index()] != usize::MAX {
                continue;
            }
            let members = abaf.atom_closure(&BTreeSet::from([atom]));
            for m in &members {
                group_of[m.index()] = groups.len();
            }
            groups.push(members.into_iter().collect());
        }
        // nodes: groups, one gate per attackable assumption, source, sink
        let attackable: Vec<AtomId> = abaf
            .assumptions()
            .iter()
            .copied()
            .filter(|&a| {
                let c = abaf.contrary(a).unwrap();
                abaf.rules().iter().any(|r| r.head == c)
            })
            .collect();
        let g = groups.len();
        let source = g + attackable.len();
        let sink = source + 1;
        let mut network = Network::new(sink + 1);
        for rule in abaf.rules() {
            let h = group_of[rule.head.index()];
            for &b in &rule.body {
                let bg = group_of[b.index()];
                if !abaf.is_assumption(b) {
                    // head below forces the body below
                    network.add(bg, h, INF);
                } else if let Some(k) = attackable.iter().position(|&a| a == b) {
                    network.add(g + k, h, INF);
                }
            }
        }
        for (k, &a) in attackable.iter().enumerate() {
            network.add(group_of[a.index()], g + k, 1);
        }
        QuasiNetwork {
            groups,
            network,
            source,
            sink,
        }
    }
}

struct Search<'a> {
    net: &'a QuasiNetwork,
    weights: Vec<usize>,
    lo: usize,
    hi: usize,
    best: Option<(i64, Vec<bool>)>,
    nodes: usize,
}

impl Search<'_> {
    fn weight(&self, sink_side: &[bool]) -> usize {
        (0..self.weights.len())
            .filter(|&i| sink_side[i])
            .map(|i| self.weights[i])
            .sum()
    }

    fn run(&mut self, forced: &mut Vec<Option<bool>>) {
        self.nodes += 1;
        if self.nodes > QUASI_NODE_BUDGET {
            return;
        }
        let mut net = self.net.network.clone();
        for (i, f) in forced.iter().enumerate() {
            match f {
                Some(true) => net.add(i, self.net.sink, INF),
                Some(false) => net.add(self.net.source, i, INF),
                None => {}
            }
        }
        let cut = net.min_cut(self.net.source, self.net.sink);
        if cut.value >= INF || self.best.as_ref().is_some_and(|(b, _)| cut.value >= *b) {
            return;
        }
        for side in [&cut.sink_min, &cut.sink_max] {
            let w = self.weight(side);
            if w >= self.lo && w <= self.hi {
                self.best = Some((cut.value, side[..self.weights.len()].to_vec()));
                return;
            }
        }
        // branch on the first group the two extreme cuts disagree on, or
        // on any free group
        let g = self.weights.len();
        let pick = (0..g)
            .find(|&i| forced[i].is_none() && cut.sink_min[i] != cut.sink_max[i])
            .or_else(|| (0..g).find(|&i| forced[i].is_none()));
        let Some(i) = pick else { return };
        for side in [true, false] {
            forced[i] = Some(side);
            self.run(forced);
        }
        forced[i] = None;
    }
}

/// The quasi-splitting with the fewest vulnerabilities among those whose
/// size lies within `window` (fractions of the language size, inclusive).
/// The empty set and the whole language are never returned.
pub fn find_quasi_splitting(abaf: &Abaf, window: (f64, f64)) -> Result<QuasiSplitting<'_>> {
    let total = abaf.len();
    let lo = ((window.0 * total as f64).ceil() as usize).max(1);
    let hi = ((window.1 * total as f64).floor() as usize).min(total.saturating_sub(1));
    if lo > hi {
        return Err(Error::DegenerateSplit);
    }
    let net = QuasiNetwork::new(abaf);
    let mut search = Search {
        net: &net,
        weights: net.groups.iter().map(Vec::len).collect(),
        lo,
        hi,
        best: None,
        nodes: 0,
    };
    search.run(&mut vec![None; net.groups.len()]);
    let (_, side) = search.best.ok_or(Error::DegenerateSplit)?;
    let s: BTreeSet<AtomId> = (0..net.groups.len())
        .filter(|&i| side[i])
        .flat_map(|i| net.groups[i].iter().copied())
        .collect();
    make_quasi_splitting(abaf, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aba::fixtures;

    #[test]
    fn dependency_graph_of_running_example() {
        let d = fixtures::running();
        let g = dependency_graph(&d);
        let id = |n: &str| d.atom_id(n).unwrap().index();
        for (a, b) in [
            ("a", "c_a"),
            ("c_a", "a"),
            ("b", "c_b"),
            ("c_b", "b"),
            ("a", "p"),
            ("p", "c_x"),
            ("w", "c_x"),
            ("x", "c_y"),
            ("c_b", "c_y"),
            ("z", "c_y"),
            ("a", "c_v"),
        ] {
            assert!(g.has_edge(id(a), id(b)), "{a} -> {b}");
        }
        let c = condensation(&g);
        assert_eq!(c.len(), 8);
        assert!(c.sccs.contains(&vec![id("p")]));
    }

    #[test]
    fn rule_free_graph_has_only_pair_edges() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .atom("q")
            .build()
            .unwrap();
        assert_eq!(dependency_graph(&d).edges.len(), 2);
    }

    #[test]
    fn mutual_attack_merges_components() {
        let d = Abaf::builder()
            .assumption("a", "c_a")
            .assumption("b", "c_b")
            .rule("c_b", ["a"])
            .rule("c_a", ["b"])
            .build()
            .unwrap();
        assert_eq!(condensation(&dependency_graph(&d)).len(), 1);
        assert_eq!(
            find_balanced_splitting(&d, 0.5),
            Err(Error::DegenerateSplit)
        );
    }

    #[test]
    fn balanced_candidates_of_running_example() {
        let d = fixtures::running();
        let wanted = d.set(["a", "c_a", "b", "c_b", "p", "v", "c_v"]).unwrap();
        let candidates = balanced_candidates(&d, 0.5);
        assert!(candidates.contains(&wanted));
        let best = find_balanced_splitting(&d, 0.5).unwrap();
        assert_eq!(best.len(), 7);
        assert!(make_splitting(&d, &best).is_ok());
    }

    #[test]
    fn setaf_candidates_of_running_example() {
        let sf = crate::setaf::fixtures::running();
        assert!(setaf_candidates(&sf, 0.5).contains(&sf.set(["a", "b"]).unwrap()));
        let cyclic = Setaf::builder()
            .attack(["a"], "b")
            .attack(["b"], "a")
            .build()
            .unwrap();
        assert_eq!(
            find_setaf_splitting(&cyclic, 0.5),
            Err(Error::DegenerateSplit)
        );
    }

    #[test]
    fn quasi_example_optimum() {
        let d = fixtures::quasi();
        let q = find_quasi_splitting(&d, (0.4, 0.6)).unwrap();
        // brute force over all atom-closed quasi-splittings in the window
        let groups: Vec<BTreeSet<AtomId>> = {
            let mut seen = BTreeSet::new();
            d.atoms()
                .filter_map(|a| {
                    let g = d.atom_closure(&BTreeSet::from([a]));
                    seen.insert(g.clone()).then_some(g)
                })
                .collect()
        };
        let mut best = usize::MAX;
        for mask in 1u32..(1 << groups.len()) - 1 {
            let s: BTreeSet<AtomId> = (0..groups.len())
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| groups[i].iter().copied())
                .collect();
            if (s.len() as f64) < 0.4 * 9.0 || (s.len() as f64) > 0.6 * 9.0 {
                continue;
            }
            if let Ok(q) = make_quasi_splitting(&d, &s) {
                best = best.min(q.k());
            }
        }
        assert_eq!(q.k(), best);
        // c is outside but unattackable, so this bottom needs no guesses
        let free =
            make_quasi_splitting(&d, &d.set(["a", "c_a", "b", "c_b", "p"]).unwrap()).unwrap();
        assert_eq!(free.k(), 0);
        let listed =
            make_quasi_splitting(&d, &d.set(["a", "c_a", "d", "c_d", "p"]).unwrap()).unwrap();
        assert_eq!(listed.k(), 1);
    }

    #[test]
    fn proper_splitting_found_with_zero_cost() {
        let d = fixtures::running();
        let q = find_quasi_splitting(&d, (0.25, 0.75)).unwrap();
        assert_eq!(q.k(), 0);
    }
}
