//! Dinitz max-flow and minimum vertex separators via node splitting.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::smallcut::bipartite::{Separator, WeightedGraph};

struct Network {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u64) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let a = self.adj[u][self.iter[u]];
            let v = self.head[a];
            if self.cap[a] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[a]));
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Max flow from `s` to `t`, stopping once it reaches `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let got = self.dfs(s, t, limit - flow);
                if got == 0 {
                    break;
                }
                flow += got;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Minimum-weight node set separating `x` from `t`. Node `v` is split into
/// `2v → 2v+1` with capacity equal to its weight; graph edges become
/// sentinel-capacity arcs both ways.
pub fn min_vertex_separator(graph: &WeightedGraph, x: usize, t: usize) -> Result<Separator> {
    let inf = graph.inf();
    let nodes = graph.node_count();
    let mut net = Network::new(2 * nodes);
    for v in 0..nodes {
        net.add_arc(2 * v, 2 * v + 1, graph.weight(v).min(inf));
        for &w in graph.neighbors(v) {
            net.add_arc(2 * v + 1, 2 * w, inf);
        }
    }
    let flow = net.max_flow(2 * x + 1, 2 * t, inf);
    if flow >= inf {
        return Err(Error::Unbounded);
    }
    let reach = net.residual_reach(2 * x + 1);
    let mut l = Vec::new();
    let mut s = Vec::new();
    for v in 0..nodes {
        if reach[2 * v + 1] || v == x {
            l.push(v);
        } else if reach[2 * v] {
            s.push(v);
        }
    }
    let sep = Separator::from_parts(graph, l, s);
    debug_assert_eq!(sep.weight, flow);
    Ok(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_parallel_paths() {
        // x - e - t
        let mut g = WeightedGraph::new(vec![10, 1, 10], 10);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let sep = min_vertex_separator(&g, 0, 2).unwrap();
        assert_eq!((sep.weight, sep.s.clone()), (1, vec![1]));

        // two disjoint unit paths
        let mut g = WeightedGraph::new(vec![10, 1, 1, 10], 10);
        for (a, b) in [(0, 1), (1, 3), (0, 2), (2, 3)] {
            g.add_edge(a, b);
        }
        assert_eq!(min_vertex_separator(&g, 0, 3).unwrap().weight, 2);

        let mut g = WeightedGraph::new(vec![10, 10], 10);
        g.add_edge(0, 1);
        assert_eq!(min_vertex_separator(&g, 0, 1), Err(Error::Unbounded));
    }

    #[test]
    fn disconnected_gives_zero() {
        let g = WeightedGraph::new(vec![10, 10], 10);
        let sep = min_vertex_separator(&g, 0, 1).unwrap();
        assert_eq!(sep.weight, 0);
        assert_eq!(sep.l, vec![0]);
        assert_eq!(sep.r, vec![1]);
    }
}
