//! Vertex-weighted bipartite incidence graph and separators.

use crate::error::{Error, Result};
use crate::hypergraph::{Cut, Hypergraph};

/// Undirected simple graph with node weights. Weights at or above `inf`
/// count as infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<usize>>,
    weight: Vec<u64>,
    inf: u64,
}

impl WeightedGraph {
    pub fn new(weight: Vec<u64>, inf: u64) -> Self {
        WeightedGraph {
            adj: vec![Vec::new(); weight.len()],
            weight,
            inf,
        }
    }

    /// Adds the edge `{a, b}`; the caller keeps the graph simple.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weight[v]
    }

    pub fn inf(&self) -> u64 {
        self.inf
    }

    pub fn is_inf(&self, v: usize) -> bool {
        self.weight[v] >= self.inf
    }

    /// Nodes reachable from `start` without entering `blocked` nodes.
    pub fn reachable(&self, start: usize, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        if blocked[start] {
            return seen;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] && !blocked[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// The incidence graph: node `v < n` stands for vertex `v` (infinite weight),
/// node `n + e` for hyperedge `e` (weight 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIncidence {
    n: usize,
    m: usize,
    p: usize,
    graph: WeightedGraph,
}

impl BipartiteIncidence {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        v
    }

    pub fn edge_node(&self, e: usize) -> usize {
        self.n + e
    }

    pub fn is_vertex_node(&self, u: usize) -> bool {
        u < self.n
    }
}

pub fn build_bipartite(g: &Hypergraph) -> BipartiteIncidence {
    let (n, m) = (g.n(), g.m());
    let inf = m as u64 + 1;
    let mut weight = vec![inf; n];
    weight.extend(std::iter::repeat_n(1, m));
    let mut graph = WeightedGraph::new(weight, inf);
    for (e, members) in g.edges().iter().enumerate() {
        for &v in members {
            graph.add_edge(v, n + e);
        }
    }
    BipartiteIncidence {
        n,
        m,
        p: g.p(),
        graph,
    }
}

/// A 3-partition `(L, S, R)` with no edge between `L` and `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub l: Vec<usize>,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    pub weight: u64,
}

impl Separator {
    /// Builds a separator from `L` and `S`; everything else goes to `R`.
    pub fn from_parts(graph: &WeightedGraph, mut l: Vec<usize>, mut s: Vec<usize>) -> Separator {
        l.sort_unstable();
        s.sort_unstable();
        let mut side = vec![0u8; graph.node_count()];
        for &v in &l {
            side[v] = 1;
        }
        for &v in &s {
            side[v] = 2;
        }
        let r = (0..graph.node_count()).filter(|&v| side[v] == 0).collect();
        let weight = s.iter().map(|&v| graph.weight(v)).sum();
        Separator { l, s, r, weight }
    }

    /// True when the three parts partition the nodes and no edge joins `L` to `R`.
    pub fn is_valid(&self, graph: &WeightedGraph) -> bool {
        let mut side = vec![u8::MAX; graph.node_count()];
        for (tag, part) in [(0u8, &self.l), (1, &self.s), (2, &self.r)] {
            for &v in part.iter() {
                if v >= side.len() || side[v] != u8::MAX {
                    return false;
                }
                side[v] = tag;
            }
        }
        if side.contains(&u8::MAX) {
            return false;
        }
        self.l
            .iter()
            .all(|&u| graph.neighbors(u).iter().all(|&w| side[w] != 2))
    }
}

/// The separator induced by a cut: `L` holds the side's vertices and the
/// hyperedges inside it, `S` the crossing hyperedges.
pub fn separator_from_cut(
    g: &Hypergraph,
    b: &BipartiteIncidence,
    side: &[usize],
) -> Result<Separator> {
    let cut = Cut::evaluate(g, side.to_vec(), "separator")?;
    let mut inside = vec![false; g.n()];
    for &v in &cut.side {
        inside[v] = true;
    }
    let mut l: Vec<usize> = cut.side.iter().map(|&v| b.vertex_node(v)).collect();
    let mut s = Vec::new();
    for (e, members) in g.edges().iter().enumerate() {
        let k = members.iter().filter(|&&v| inside[v]).count();
        if k == members.len() {
            l.push(b.edge_node(e));
        } else if k > 0 {
            s.push(b.edge_node(e));
        }
    }
    Ok(Separator::from_parts(b.graph(), l, s))
}

/// The cut whose side is the vertex part of `L`.
pub fn cut_from_separator(g: &Hypergraph, b: &BipartiteIncidence, sep: &Separator) -> Result<Cut> {
    if sep.s.iter().any(|&u| b.is_vertex_node(u)) {
        return Err(Error::InvalidSeparator("separator contains a vertex node"));
    }
    if !sep.is_valid(b.graph()) {
        return Err(Error::InvalidSeparator("parts overlap or L touches R"));
    }
    let side: Vec<usize> = sep
        .l
        .iter()
        .copied()
        .filter(|&u| b.is_vertex_node(u))
        .collect();
    if side.is_empty() || side.len() == g.n() {
        return Err(Error::InvalidSeparator("L holds no vertex or every vertex"));
    }
    Cut::evaluate(g, side, "separator")
}

/// The scratch predicate: `|S| ≤ t`, `|L| ≤ t/(100 log(m+n))` and at least
/// `300 |L| log(m+n)` separator nodes of degree at most `8t`.
pub fn is_t_scratch(b: &BipartiteIncidence, sep: &Separator, t: usize) -> bool {
    let log = crate::log2_ceil(b.m() + b.n()).max(1) as f64;
    let low = sep
        .s
        .iter()
        .filter(|&&v| b.graph().neighbors(v).len() <= 8 * t)
        .count();
    sep.s.len() <= t
        && (sep.l.len() as f64) <= t as f64 / (100.0 * log)
        && low as f64 >= 300.0 * sep.l.len() as f64 * log
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete3_on4() -> Hypergraph {
        Hypergraph::build(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            false,
        )
        .unwrap()
    }

    #[test]
    fn construction_counts() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        let b = build_bipartite(&g);
        assert_eq!((b.graph().node_count(), b.graph().edge_count()), (3, 2));
        let b = build_bipartite(&complete3_on4());
        assert_eq!((b.graph().node_count(), b.graph().edge_count()), (8, 12));
        let empty = Hypergraph::build(3, vec![], false).unwrap();
        let b = build_bipartite(&empty);
        assert_eq!((b.graph().node_count(), b.graph().edge_count()), (3, 0));
    }

    #[test]
    fn single_edge_round_trip() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        let b = build_bipartite(&g);
        let sep = separator_from_cut(&g, &b, &[0]).unwrap();
        assert_eq!(sep.weight, 1);
        assert_eq!(sep.s, vec![2]);
        assert_eq!(cut_from_separator(&g, &b, &sep).unwrap().capacity, 1);
    }

    #[test]
    fn vertex_in_separator_rejected() {
        let g = Hypergraph::build(3, vec![vec![0, 1], vec![1, 2]], false).unwrap();
        let b = build_bipartite(&g);
        let sep = Separator::from_parts(b.graph(), vec![0, 3], vec![1]);
        assert!(matches!(
            cut_from_separator(&g, &b, &sep),
            Err(Error::InvalidSeparator(_))
        ));
    }
}
