//! Kernels: contracted and pruned pieces of the incidence graph whose
//! source–sink separators lift to separators of the whole graph.

use rand::Rng;

use crate::error::Result;
use crate::smallcut::bipartite::{BipartiteIncidence, Separator, WeightedGraph};
use crate::smallcut::flow::min_vertex_separator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// The pruned graph on local ids.
    pub graph: WeightedGraph,
    /// Local id → incidence-graph node; `None` for the contracted sink.
    pub origin: Vec<Option<usize>>,
    /// Common neighbours of the source and the sink, removed from the graph.
    pub z: Vec<usize>,
    /// Local id of the source.
    pub x: usize,
    /// Local id of the contracted sink.
    pub t: usize,
    /// Incidence-graph nodes merged into the sink.
    pub contracted: Vec<usize>,
    /// True when the sample left nothing to contract.
    pub degenerate: bool,
}

impl Kernel {
    /// Number of vertex nodes (other than the sink) kept in the kernel.
    pub fn vertex_nodes(&self, b: &BipartiteIncidence) -> usize {
        self.origin
            .iter()
            .filter(|o| o.is_some_and(|u| b.is_vertex_node(u)))
            .count()
    }
}

/// Samples each node with probability `1/(8ℓ)` and builds a kernel for every source in `xs`.
pub fn find_kernels<R: Rng + ?Sized>(
    b: &BipartiteIncidence,
    xs: &[usize],
    ell: usize,
    rng: &mut R,
) -> Vec<Kernel> {
    let q = 1.0 / (8.0 * ell.max(1) as f64);
    let sample: Vec<bool> = (0..b.graph().node_count())
        .map(|_| rng.gen_bool(q))
        .collect();
    find_kernels_with_sample(b, xs, &sample)
}

pub fn find_kernels_with_sample(
    b: &BipartiteIncidence,
    xs: &[usize],
    sample: &[bool],
) -> Vec<Kernel> {
    xs.iter().map(|&x| kernel_for(b, x, sample)).collect()
}

/// The kernel for source `x` under the sampled node set `sample`.
pub fn kernel_for(b: &BipartiteIncidence, x: usize, sample: &[bool]) -> Kernel {
    let graph = b.graph();
    let nodes = graph.node_count();
    let mut closed_x = vec![false; nodes];
    closed_x[x] = true;
    for &w in graph.neighbors(x) {
        closed_x[w] = true;
    }

    // T_x and its vertex-node neighbourhood are merged into the sink.
    let mut merged = vec![false; nodes];
    for v in 0..nodes {
        if sample[v] && !closed_x[v] {
            merged[v] = true;
        }
    }
    let t_x: Vec<usize> = (0..nodes).filter(|&v| merged[v]).collect();
    if t_x.is_empty() {
        return Kernel {
            graph: WeightedGraph::new(Vec::new(), graph.inf()),
            origin: Vec::new(),
            z: Vec::new(),
            x: 0,
            t: 0,
            contracted: Vec::new(),
            degenerate: true,
        };
    }
    for &v in &t_x {
        for &w in graph.neighbors(v) {
            if b.is_vertex_node(w) {
                merged[w] = true;
            }
        }
    }
    let contracted: Vec<usize> = (0..nodes).filter(|&v| merged[v]).collect();

    // Neighbours of the sink after contraction.
    let mut near_t = vec![false; nodes];
    for &v in &contracted {
        for &w in graph.neighbors(v) {
            if !merged[w] {
                near_t[w] = true;
            }
        }
    }
    let z: Vec<usize> = graph
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&w| near_t[w])
        .collect();
    let mut removed = merged.clone();
    for &w in &z {
        removed[w] = true;
    }
    let near_t_kept: Vec<bool> = (0..nodes).map(|v| near_t[v] && !removed[v]).collect();
    // Edges with both ends next to the sink are dropped.
    let edge_kept = |a: usize, c: usize| !(near_t[a] && near_t[c]);

    // Keep what x reaches while avoiding the sink's closed neighbourhood, plus that neighbourhood.
    let mut keep = vec![false; nodes];
    keep[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            if !removed[w] && !near_t_kept[w] && !keep[w] && edge_kept(u, w) {
                keep[w] = true;
                stack.push(w);
            }
        }
    }
    for v in 0..nodes {
        if near_t_kept[v] {
            keep[v] = true;
        }
    }

    // Sink neighbours whose only remaining edge is the one to the sink are pruned.
    for v in 0..nodes {
        if !near_t_kept[v] {
            continue;
        }
        let others = graph
            .neighbors(v)
            .iter()
            .filter(|&&w| keep[w] && !merged[w] && edge_kept(v, w))
            .count();
        if others == 0 {
            keep[v] = false;
        }
    }

    // Local ids: source 0, sink 1, the rest by increasing node id.
    let mut local = vec![usize::MAX; nodes];
    let mut origin = vec![Some(x), None];
    local[x] = 0;
    for v in 0..nodes {
        if keep[v] && v != x {
            local[v] = origin.len();
            origin.push(Some(v));
        }
    }
    let weights: Vec<u64> = origin
        .iter()
        .map(|o| o.map_or(graph.inf(), |v| graph.weight(v)))
        .collect();
    let mut kg = WeightedGraph::new(weights, graph.inf());
    for v in 0..nodes {
        if !keep[v] {
            continue;
        }
        for &w in graph.neighbors(v) {
            if keep[w] && v < w && edge_kept(v, w) {
                kg.add_edge(local[v], local[w]);
            }
        }
        if near_t_kept[v] {
            kg.add_edge(local[v], 1);
        }
    }
    Kernel {
        graph: kg,
        origin,
        z,
        x: 0,
        t: 1,
        contracted,
        degenerate: false,
    }
}

/// Minimum source–sink separator of the kernel graph.
pub fn kernel_min_separator(k: &Kernel) -> Result<Separator> {
    min_vertex_separator(&k.graph, k.x, k.t)
}

/// Maps a kernel separator back to the incidence graph: the separator gains
/// `Z`, and `L` becomes the component of the source once the separator is removed.
pub fn lift_separator(b: &BipartiteIncidence, k: &Kernel, sep: &Separator) -> Separator {
    let graph = b.graph();
    let mut s: Vec<usize> = sep.s.iter().filter_map(|&v| k.origin[v]).collect();
    s.extend(&k.z);
    let mut blocked = vec![false; graph.node_count()];
    for &v in &s {
        blocked[v] = true;
    }
    let source = k.origin[k.x].expect("source has an origin");
    let reach = graph.reachable(source, &blocked);
    let l = (0..graph.node_count()).filter(|&v| reach[v]).collect();
    Separator::from_parts(graph, l, s)
}
