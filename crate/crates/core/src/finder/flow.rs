//! Edmonds–Karp maximum flow on small dense networks.

use std::collections::VecDeque;

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub(crate) struct Network {
    n: usize,
    cap: Vec<Vec<i64>>,
    adj: Vec<Vec<usize>>,
}

/// A maximum flow together with both extreme minimum cuts, given as sink
/// sides: `sink_min` is the smallest sink side, `sink_max` the largest.
#[derive(Debug, Clone)]
pub(crate) struct Cut {
    pub value: i64,
    pub sink_min: Vec<bool>,
    pub sink_max: Vec<bool>,
}

impl Network {
    pub(crate) fn new(n: usize) -> Self {
        Network {
            n,
            cap: vec![vec![0; n]; n],
            adj: vec![Vec::new(); n],
        }
    }

    pub(crate) fn add(&mut self, from: usize, to: usize, cap: i64) {
        if from == to {
            return;
        }
        if self.cap[from][to] == 0 && self.cap[to][from] == 0 {
            self.adj[from].push(to);
            self.adj[to].push(from);
        }
        self.cap[from][to] = (self.cap[from][to] + cap).min(INF);
    }

    pub(crate) fn min_cut(&self, source: usize, sink: usize) -> Cut {
        let mut residual = self.cap.clone();
        let mut value = 0i64;
        loop {
            let mut parent = vec![usize::MAX; self.n];
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if parent[v] == usize::MAX && residual[u][v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut push = INF;
            let mut v = sink;
            while v != source {
                let u = parent[v];
                push = push.min(residual[u][v]);
                v = u;
            }
            let mut v = sink;
            while v != source {
                let u = parent[v];
                residual[u][v] -= push;
                residual[v][u] += push;
                v = u;
            }
            value = value.saturating_add(push);
            if value >= INF {
                break;
            }
        }
        let from_source = self.reach(&residual, source, false);
        let to_sink = self.reach(&residual, sink, true);
        Cut {
            value,
            sink_min: to_sink,
            sink_max: from_source.iter().map(|r| !r).collect(),
        }
    }

    fn reach(&self, residual: &[Vec<i64>], start: usize, backwards: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                let open = if backwards {
                    residual[v][u] > 0
                } else {
                    residual[u][v] > 0
                };
                if open && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // s=0, t=5
        let mut g = Network::new(6);
        for (a, b, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (1, 2, 10),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            g.add(a, b, c);
        }
        let cut = g.min_cut(0, 5);
        assert_eq!(cut.value, 23);
        assert!(cut.sink_min[5] && !cut.sink_min[0]);
    }

    #[test]
    fn extreme_cuts_differ_on_slack_nodes() {
        // 0 -> 1 -> 2 with unit arcs; node 1 may go to either side
        let mut g = Network::new(3);
        g.add(0, 1, 1);
        g.add(1, 2, 1);
        let cut = g.min_cut(0, 2);
        assert_eq!(cut.value, 1);
        assert_eq!(cut.sink_min, vec![false, false, true]);
        assert_eq!(cut.sink_max, vec![false, true, true]);
    }
}
