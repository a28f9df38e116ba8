//! Directed encoding of a hypergraph and the randomized local flow search on it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: u64,
    /// Hyperedge the arc belongs to.
    pub edge: usize,
}

/// Nodes `0..n` are vertices, `n + e` is the in-node and `n + m + e` the
/// out-node of hyperedge `e`. Arc `e` (for `e < m`) is the unit arc from the
/// in-node to the out-node; all other arcs carry the sentinel weight `m + 1`.
///
/// The search state is a unit flow per arc: a unit arc carrying flow is
/// reversed, a sentinel arc carrying flow gains a reverse residual arc.
#[derive(Debug, Clone)]
pub struct DirectedCutGraph {
    n: usize,
    m: usize,
    rank: usize,
    inf: u64,
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    flow: Vec<u64>,
    marked: Vec<bool>,
    touched: Vec<usize>,
    stamp: Vec<u32>,
    round_id: u32,
    parent: Vec<(usize, bool)>,
}

pub fn build_directed(g: &Hypergraph) -> DirectedCutGraph {
    let (n, m) = (g.n(), g.m());
    let inf = m as u64 + 1;
    let nodes = n + 2 * m;
    let mut arcs = Vec::with_capacity(m + 2 * g.p());
    for e in 0..m {
        arcs.push(Arc {
            tail: n + e,
            head: n + m + e,
            weight: 1,
            edge: e,
        });
    }
    for (e, members) in g.edges().iter().enumerate() {
        for &v in members {
            arcs.push(Arc {
                tail: v,
                head: n + e,
                weight: inf,
                edge: e,
            });
            arcs.push(Arc {
                tail: n + m + e,
                head: v,
                weight: inf,
                edge: e,
            });
        }
    }
    let mut adj = vec![Vec::new(); nodes];
    for (id, a) in arcs.iter().enumerate() {
        adj[a.tail].push(id);
        adj[a.head].push(id);
    }
    let arc_count = arcs.len();
    DirectedCutGraph {
        n,
        m,
        rank: g.rank(),
        inf,
        arcs,
        adj,
        flow: vec![0; arc_count],
        marked: vec![false; arc_count],
        touched: Vec::new(),
        stamp: vec![0; nodes],
        round_id: 0,
        parent: vec![(usize::MAX, false); nodes],
    }
}

/// How one call of the search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A complete exploration in round `round` returned this node set.
    Cut { nodes: Vec<usize>, round: usize },
    /// The marked-arc budget ran out.
    MarkCapReached,
    /// Every round stopped early.
    RoundsExhausted,
    /// A complete exploration reached every vertex node, so no cut exists.
    Improper,
}

impl DirectedCutGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn node_count(&self) -> usize {
        self.n + 2 * self.m
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn inf(&self) -> u64 {
        self.inf
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        v
    }

    pub fn edge_in(&self, e: usize) -> usize {
        self.n + e
    }

    pub fn edge_out(&self, e: usize) -> usize {
        self.n + self.m + e
    }

    fn is_inf(&self, a: usize) -> bool {
        self.arcs[a].weight >= self.inf
    }

    /// Drops all flow and marks.
    pub fn reset(&mut self) {
        for &a in &self.touched {
            self.flow[a] = 0;
            self.marked[a] = false;
        }
        self.touched.clear();
    }

    fn node_mask(&self, c: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.node_count()];
        for &u in c {
            if u >= mask.len() {
                return Err(Error::InvalidDirectedCut);
            }
            mask[u] = true;
        }
        let k = (0..self.n).filter(|&v| mask[v]).count();
        if k == 0 || k == self.n {
            return Err(Error::InvalidDirectedCut);
        }
        Ok(mask)
    }

    /// Residual weight leaving `c` under the current flow: unit arcs count
    /// while unused, reversed unit arcs count backwards, sentinel arcs always
    /// count forwards and count backwards by their flow.
    pub fn directed_cut_weight(&self, c: &[usize]) -> Result<u64> {
        let mask = self.node_mask(c)?;
        let mut total = 0u64;
        for (id, a) in self.arcs.iter().enumerate() {
            let f = self.flow[id];
            if mask[a.tail] && !mask[a.head] {
                total += if self.is_inf(id) {
                    self.inf
                } else {
                    a.weight - f
                };
            } else if mask[a.head] && !mask[a.tail] {
                total += f;
            }
        }
        Ok(total)
    }

    /// Weight of the arcs leaving `c` ignoring any flow.
    pub fn original_cut_weight(&self, c: &[usize]) -> Result<u64> {
        let mask = self.node_mask(c)?;
        Ok(self
            .arcs
            .iter()
            .filter(|a| mask[a.tail] && !mask[a.head])
            .map(|a| a.weight)
            .sum())
    }

    /// Pushes one unit along `path`, a list of `(arc, forward)` steps.
    pub fn augment(&mut self, path: &[(usize, bool)]) {
        for &(a, forward) in path {
            if forward {
                self.flow[a] += 1;
            } else {
                self.flow[a] -= 1;
            }
            self.touched.push(a);
        }
    }

    fn residual_step(&self, a: usize, from: usize) -> Option<(usize, bool)> {
        let arc = &self.arcs[a];
        if arc.tail == from && (self.is_inf(a) || self.flow[a] < arc.weight) {
            Some((arc.head, true))
        } else if arc.head == from && self.flow[a] > 0 {
            Some((arc.tail, false))
        } else {
            None
        }
    }

    /// The local search from node `x` with connectivity bound `k` and size
    /// bound `s`. The state is reset on entry.
    pub fn search<R: Rng + ?Sized>(
        &mut self,
        x: usize,
        k: usize,
        s: usize,
        rng: &mut R,
    ) -> SearchOutcome {
        self.reset();
        let r = self.rank.max(2) as u64;
        let sr = pow_saturating(s as u64, r as u32);
        let cap = 512u64
            .saturating_mul((k as u64).saturating_mul(k as u64))
            .saturating_mul(r)
            .saturating_mul(sr);
        let stop_prob = 1.0 / (8.0 * r as f64 * (4.0 * sr as f64 + k as f64));
        let mut marks = 0u64;
        let mut queue = std::collections::VecDeque::new();
        for round in 1..=k + 1 {
            self.round_id = self.round_id.wrapping_add(1);
            if self.round_id == 0 {
                self.stamp.iter_mut().for_each(|s| *s = 0);
                self.round_id = 1;
            }
            let id = self.round_id;
            queue.clear();
            self.stamp[x] = id;
            queue.push_back(x);
            let mut stop = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for i in 0..self.adj[u].len() {
                    let a = self.adj[u][i];
                    let Some((v, forward)) = self.residual_step(a, u) else {
                        continue;
                    };
                    let mut halt = false;
                    if !self.marked[a] {
                        self.marked[a] = true;
                        self.touched.push(a);
                        marks += 1;
                        if marks >= cap {
                            return SearchOutcome::MarkCapReached;
                        }
                        halt = rng.gen_bool(stop_prob);
                    }
                    if self.stamp[v] != id {
                        self.stamp[v] = id;
                        self.parent[v] = (a, forward);
                        queue.push_back(v);
                    }
                    if halt {
                        stop = Some(v);
                        break 'bfs;
                    }
                }
            }
            match stop {
                None => {
                    let nodes: Vec<usize> = (0..self.node_count())
                        .filter(|&u| self.stamp[u] == id)
                        .collect();
                    if (0..self.n).all(|v| self.stamp[v] == id) {
                        return SearchOutcome::Improper;
                    }
                    let weight = self
                        .original_cut_weight(&nodes)
                        .expect("explored set holds x and misses a vertex");
                    assert!(
                        weight < round as u64,
                        "set returned in round {round} has weight {weight}"
                    );
                    return SearchOutcome::Cut { nodes, round };
                }
                Some(y) => {
                    let mut path = Vec::new();
                    let mut v = y;
                    while v != x {
                        let (a, forward) = self.parent[v];
                        path.push((a, forward));
                        v = if forward {
                            self.arcs[a].tail
                        } else {
                            self.arcs[a].head
                        };
                    }
                    self.augment(&path);
                }
            }
        }
        SearchOutcome::RoundsExhausted
    }
}

pub(crate) fn pow_saturating(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).unwrap_or(u64::MAX)
}

/// One run of the local search; `None` when it aborts or finds nothing.
pub fn small_size_small_min_cut<R: Rng + ?Sized>(
    d: &mut DirectedCutGraph,
    x: usize,
    k: usize,
    s: usize,
    rng: &mut R,
) -> Option<Vec<usize>> {
    match d.search(x, k, s, rng) {
        SearchOutcome::Cut { nodes, .. } => Some(nodes),
        _ => None,
    }
}
