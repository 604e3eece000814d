use std::collections::BTreeSet;
use std::fmt::Write;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

/// A labelled directed graph over nodes `0..labels.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// The acyclic quotient of a graph by its strongly connected components.
/// Components are numbered in a topological order, sources first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub sccs: Vec<Vec<usize>>,
    pub dag_edges: BTreeSet<(usize, usize)>,
    pub weights: Vec<usize>,
    pub component_of: Vec<usize>,
}

pub fn condensation(g: &Digraph) -> Condensation {
    let mut pg = DiGraph::<(), ()>::with_capacity(g.len(), g.edges.len());
    let nodes: Vec<_> = (0..g.len()).map(|_| pg.add_node(())).collect();
    for &(a, b) in &g.edges {
        pg.add_edge(nodes[a], nodes[b], ());
    }
    // tarjan_scc yields components in reverse topological order
    let mut sccs: Vec<Vec<usize>> = tarjan_scc(&pg)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    sccs.reverse();
    let mut component_of = vec![0; g.len()];
    for (i, scc) in sccs.iter().enumerate() {
        for &n in scc {
            component_of[n] = i;
        }
    }
    let dag_edges = g
        .edges
        .iter()
        .map(|&(a, b)| (component_of[a], component_of[b]))
        .filter(|(a, b)| a != b)
        .collect();
    let weights = sccs.iter().map(Vec::len).collect();
    Condensation {
        sccs,
        dag_edges,
        weights,
        component_of,
    }
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.sccs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sccs.is_empty()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.len()];
        for &(a, b) in &self.dag_edges {
            preds[b].push(a);
        }
        preds
    }

    /// All predecessor-closed component sets, or `None` if there are more
    /// than `cap` of them.
    pub fn ideals(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let preds = self.predecessors();
        let mut out = Vec::new();
        let mut chosen = vec![false; self.len()];
        if self.collect_ideals(0, &preds, &mut chosen, &mut out, cap) {
            Some(out)
        } else {
            None
        }
    }

    fn collect_ideals(
        &self,
        i: usize,
        preds: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if i == self.len() {
            if out.len() >= cap {
                return false;
            }
            out.push((0..self.len()).filter(|&c| chosen[c]).collect());
            return true;
        }
        if !self.collect_ideals(i + 1, preds, chosen, out, cap) {
            return false;
        }
        // components are topologically ordered, so predecessors are decided
        if preds[i].iter().all(|&p| chosen[p]) {
            chosen[i] = true;
            let ok = self.collect_ideals(i + 1, preds, chosen, out, cap);
            chosen[i] = false;
            return ok;
        }
        true
    }

    /// Prefixes of the topological order, which are always ideals.
    pub fn prefixes(&self) -> Vec<Vec<usize>> {
        (0..=self.len()).map(|k| (0..k).collect()).collect()
    }

    /// Whether every component feeding into `set` is inside it.
    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        self.dag_edges
            .iter()
            .all(|(a, b)| !inside.contains(b) || inside.contains(a))
    }

    pub fn nodes_of(&self, components: &[usize]) -> BTreeSet<usize> {
        components
            .iter()
            .flat_map(|&c| self.sccs[c].iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            edges: edges.iter().copied().collect(),
        }
    }

    #[test]
    fn acyclic_graph_has_singleton_components() {
        let c = condensation(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(c.len(), 3);
        assert_eq!(c.weights, vec![1, 1, 1]);
        assert_eq!(c.sccs, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cycle_is_merged() {
        let c = condensation(&graph(4, &[(0, 1), (1, 0), (1, 2), (3, 2)]));
        assert_eq!(c.len(), 3);
        assert!(c.sccs.contains(&vec![0, 1]));
        for &(a, b) in &c.dag_edges {
            assert!(a < b);
        }
    }

    #[test]
    fn ideals_of_a_diamond() {
        let c = condensation(&graph(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]));
        let ideals = c.ideals(100).unwrap();
        // ∅, {0}, {0,1}, {0,2}, {0,1,2}, all
        assert_eq!(ideals.len(), 6);
        assert!(ideals.iter().all(|i| c.is_ideal(i)));
        assert!(c.ideals(3).is_none());
    }

    #[test]
    fn dot_output_lists_edges() {
        let dot = graph(2, &[(0, 1)]).to_dot();
        assert!(dot.contains("n0 -> n1;"));
    }
}
