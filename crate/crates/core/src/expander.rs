//! Expander decomposition. Hypergraphs are reduced to multigraphs by star
//! expansion; multigraph blocks are certified exactly when small and split by
//! spectral sweeps plus local search when large.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexPartition};
use crate::seed::{derive_seed, digest, rng_from};

/// Blocks up to this size get an exhaustive minimum-conductance check.
pub const EXACT_LIMIT: usize = 14;
const POWER_ITERATIONS: usize = 200;
const LOCAL_PASSES: usize = 20;
const LOCAL_ROUNDS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub partition: VertexPartition,
    pub phi: f64,
    pub crossing_edges: usize,
    /// Per block: true when its conductance was verified exhaustively.
    pub certified: Vec<bool>,
}

/// Multigraph decomposition: blocks plus exact-certification flags.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDecomposition {
    pub partition: VertexPartition,
    pub certified: Vec<bool>,
}

/// Replaces each hyperedge by a star centred at its smallest vertex.
pub fn star_expand(g: &Hypergraph) -> Hypergraph {
    let mut edges = Vec::with_capacity(g.p() - g.m());
    for e in g.edges() {
        for &u in &e[1..] {
            edges.push(vec![e[0], u]);
        }
    }
    Hypergraph::from_canonical(g.n(), edges, true)
}

/// Number of hyperedges meeting two or more blocks (uncovered vertices count as singletons).
pub fn crossing_count(g: &Hypergraph, partition: &VertexPartition) -> Result<usize> {
    let owner = partition.block_of(g.n())?;
    let key = |v: usize| owner[v].map_or(usize::MAX - v, |b| b);
    Ok(g.edges()
        .iter()
        .filter(|e| e.iter().any(|&v| key(v) != key(e[0])))
        .count())
}

struct Multigraph {
    adj: Vec<Vec<usize>>,
}

impl Multigraph {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

enum Verdict {
    Split(Vec<usize>),
    Final(bool),
}

/// Recursive certify-or-split decomposition of a rank-2 multigraph.
pub fn graph_expander_decomposition(
    graph: &Hypergraph,
    phi: f64,
    seed: u64,
) -> Result<GraphDecomposition> {
    if graph.rank() > 2 {
        return Err(Error::BadParams(
            "graph decomposition needs rank at most 2".to_string(),
        ));
    }
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::BadPhi(phi));
    }
    let mut adj = vec![Vec::new(); graph.n()];
    for e in graph.edges() {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    let mg = Multigraph { adj };
    let mut stack = vec![(0..graph.n()).collect::<Vec<_>>()];
    let mut done: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut in_x = vec![false; graph.n()];
    while let Some(x) = stack.pop() {
        if x.is_empty() {
            continue;
        }
        for &v in &x {
            in_x[v] = true;
        }
        let block_seed = derive_seed(seed, digest(x.iter().map(|&v| v as u64)));
        let verdict = examine(&mg, &x, &in_x, phi, block_seed);
        for &v in &x {
            in_x[v] = false;
        }
        match verdict {
            Verdict::Final(certified) => done.push((x, certified)),
            Verdict::Split(s) => {
                let mut mark = vec![false; graph.n()];
                for &v in &s {
                    mark[v] = true;
                }
                let rest: Vec<usize> = x.iter().copied().filter(|&v| !mark[v]).collect();
                let mut s = s;
                s.sort_unstable();
                stack.push(rest);
                stack.push(s);
            }
        }
    }
    done.sort_by_key(|(b, _)| b[0]);
    let certified = done.iter().map(|(_, c)| *c).collect();
    let partition = VertexPartition::new(done.into_iter().map(|(b, _)| b).collect())?;
    Ok(GraphDecomposition {
        partition,
        certified,
    })
}

fn examine(mg: &Multigraph, x: &[usize], in_x: &[bool], phi: f64, seed: u64) -> Verdict {
    if x.len() == 1 {
        return Verdict::Final(true);
    }
    // A block that falls apart is split along a component first.
    let comp = component_of(mg, x[0], in_x);
    if comp.len() < x.len() {
        return Verdict::Split(comp);
    }
    if x.len() <= EXACT_LIMIT {
        let (value, side) = exact_min_conductance(mg, x, in_x);
        return if value < phi {
            Verdict::Split(side)
        } else {
            Verdict::Final(true)
        };
    }
    let (value, side) = heuristic_min_conductance(mg, x, in_x, seed);
    if value < phi {
        Verdict::Split(side)
    } else {
        Verdict::Final(false)
    }
}

fn component_of(mg: &Multigraph, start: usize, in_x: &[bool]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    let mut out = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &mg.adj[u] {
            if in_x[w] && seen.insert(w) {
                stack.push(w);
                out.push(w);
            }
        }
    }
    out
}

fn ratio(cut: usize, vol_s: usize, vol_x: usize) -> f64 {
    let denom = vol_s.min(vol_x - vol_s);
    if denom == 0 {
        f64::INFINITY
    } else {
        cut as f64 / denom as f64
    }
}

/// Gray-code enumeration of every split of `x` (first vertex fixed on one side).
fn exact_min_conductance(mg: &Multigraph, x: &[usize], in_x: &[bool]) -> (f64, Vec<usize>) {
    let k = x.len();
    let vol_x: usize = x.iter().map(|&v| mg.degree(v)).sum();
    let mut in_s = std::collections::HashMap::new();
    for &v in x {
        in_s.insert(v, false);
    }
    in_s.insert(x[0], true);
    let mut cut = mg.adj[x[0]]
        .iter()
        .filter(|&&w| in_x[w] && w != x[0])
        .count();
    let mut vol_s = mg.degree(x[0]);
    let full = (1u64 << (k - 1)) - 1;
    let mut best = (ratio(cut, vol_s, vol_x), 0u64);
    for i in 1..=full {
        let bit = i.trailing_zeros() as usize;
        let v = x[bit + 1];
        let now_in = !in_s[&v];
        in_s.insert(v, now_in);
        for &w in &mg.adj[v] {
            if !in_x[w] {
                continue;
            }
            if in_s[&w] == now_in {
                cut -= 1;
            } else {
                cut += 1;
            }
        }
        if now_in {
            vol_s += mg.degree(v);
        } else {
            vol_s -= mg.degree(v);
        }
        let gray = i ^ (i >> 1);
        if gray == full {
            continue;
        }
        let value = ratio(cut, vol_s, vol_x);
        if value < best.0 {
            best = (value, gray);
        }
    }
    let mut side = vec![x[0]];
    side.extend(
        (0..k - 1)
            .filter(|b| best.1 >> b & 1 == 1)
            .map(|b| x[b + 1]),
    );
    (best.0, side)
}

/// Split search for large blocks: a spectral sweep, then local moves from the
/// sweep set and from seeded random balls.
fn heuristic_min_conductance(
    mg: &Multigraph,
    x: &[usize],
    in_x: &[bool],
    seed: u64,
) -> (f64, Vec<usize>) {
    let k = x.len();
    let mut rng = rng_from(seed);
    let index: std::collections::HashMap<usize, usize> =
        x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local: Vec<Vec<usize>> = x
        .iter()
        .map(|&v| {
            mg.adj[v]
                .iter()
                .filter(|&&w| in_x[w])
                .map(|w| index[w])
                .collect()
        })
        .collect();
    let full_deg: Vec<usize> = x.iter().map(|&v| mg.degree(v)).collect();
    let vol_x: usize = full_deg.iter().sum();

    // Lazy walk on the induced graph, deflated against its top eigenvector.
    let sq: Vec<f64> = local.iter().map(|l| (l.len() as f64).sqrt()).collect();
    let norm = sq.iter().map(|s| s * s).sum::<f64>().sqrt();
    let top: Vec<f64> = sq.iter().map(|s| s / norm).collect();
    let mut vec: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let deflate = |v: &mut Vec<f64>| {
        let dot: f64 = v.iter().zip(&top).map(|(a, b)| a * b).sum();
        v.iter_mut().zip(&top).for_each(|(a, b)| *a -= dot * b);
        let len = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len > 0.0 {
            v.iter_mut().for_each(|a| *a /= len);
        }
    };
    deflate(&mut vec);
    for _ in 0..POWER_ITERATIONS {
        let mut next = vec![0.0; k];
        for i in 0..k {
            let mut acc = 0.0;
            for &j in &local[i] {
                acc += vec[j] / sq[j];
            }
            next[i] = 0.5 * vec[i] + 0.5 * acc / sq[i];
        }
        deflate(&mut next);
        vec = next;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        (vec[a] / sq[a])
            .total_cmp(&(vec[b] / sq[b]))
            .then(a.cmp(&b))
    });

    let mut in_s = vec![false; k];
    let (mut cut, mut vol_s) = (0usize, 0usize);
    let mut best_sweep = (f64::INFINITY, 1usize);
    for (pos, &i) in order.iter().enumerate().take(k - 1) {
        in_s[i] = true;
        vol_s += full_deg[i];
        for &j in &local[i] {
            if in_s[j] {
                cut -= 1;
            } else {
                cut += 1;
            }
        }
        let value = ratio(cut, vol_s, vol_x);
        if value < best_sweep.0 {
            best_sweep = (value, pos + 1);
        }
    }
    let mut start = vec![false; k];
    for &i in &order[..best_sweep.1] {
        start[i] = true;
    }
    let mut best = improve(&local, &full_deg, vol_x, start, &mut rng);
    for _ in 0..LOCAL_PASSES {
        let ball = random_ball(&local, &full_deg, vol_x, &mut rng);
        let candidate = improve(&local, &full_deg, vol_x, ball, &mut rng);
        if candidate.0 < best.0 {
            best = candidate;
        }
    }
    let side = (0..k).filter(|&i| best.1[i]).map(|i| x[i]).collect();
    (best.0, side)
}

fn random_ball(local: &[Vec<usize>], deg: &[usize], vol_x: usize, rng: &mut impl Rng) -> Vec<bool> {
    let k = local.len();
    let target = (vol_x as f64 * rng.gen_range(0.05..0.5)) as usize;
    let mut in_s = vec![false; k];
    let root = rng.gen_range(0..k);
    in_s[root] = true;
    let mut vol = deg[root];
    let mut queue = std::collections::VecDeque::from([root]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &w in &local[u] {
            if vol >= target || count + 1 >= k {
                return in_s;
            }
            if !in_s[w] {
                in_s[w] = true;
                vol += deg[w];
                count += 1;
                queue.push_back(w);
            }
        }
    }
    in_s
}

/// Greedy single-vertex moves while they lower the conductance.
fn improve(
    local: &[Vec<usize>],
    deg: &[usize],
    vol_x: usize,
    mut in_s: Vec<bool>,
    rng: &mut impl Rng,
) -> (f64, Vec<bool>) {
    let k = local.len();
    let mut size = in_s.iter().filter(|&&b| b).count();
    let mut vol_s: usize = (0..k).filter(|&i| in_s[i]).map(|i| deg[i]).sum();
    let mut cut: usize = (0..k)
        .filter(|&i| in_s[i])
        .map(|i| local[i].iter().filter(|&&j| !in_s[j]).count())
        .sum();
    let mut value = ratio(cut, vol_s, vol_x);
    let mut order: Vec<usize> = (0..k).collect();
    for _ in 0..LOCAL_ROUNDS {
        order.shuffle(rng);
        let mut moved = false;
        for &i in &order {
            let (same, other) = local[i].iter().fold((0usize, 0usize), |(s, o), &j| {
                if in_s[j] == in_s[i] {
                    (s + 1, o)
                } else {
                    (s, o + 1)
                }
            });
            let (new_size, new_vol) = if in_s[i] {
                (size - 1, vol_s - deg[i])
            } else {
                (size + 1, vol_s + deg[i])
            };
            if new_size == 0 || new_size == k {
                continue;
            }
            let new_cut = cut + same - other;
            let new_value = ratio(new_cut, new_vol, vol_x);
            if new_value < value - 1e-12 {
                in_s[i] = !in_s[i];
                size = new_size;
                vol_s = new_vol;
                cut = new_cut;
                value = new_value;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    (value, in_s)
}

/// Decomposes `g` so that every certified block `X` satisfies
/// `|E°(S, X∖S)| ≥ φ · min(vol S, vol X∖S)` for all splits. Requires `φ ≤ 1/(r−1)`.
pub fn hypergraph_expander_decomposition(g: &Hypergraph, phi: f64) -> Result<Decomposition> {
    let r = g.rank().max(2) as f64;
    if phi.is_nan() || phi <= 0.0 || phi > 1.0 / (r - 1.0) + 1e-12 {
        return Err(Error::BadPhi(phi));
    }
    let star = star_expand(g);
    let seed = digest(
        [g.n() as u64, g.m() as u64].into_iter().chain(
            g.edges()
                .iter()
                .flat_map(|e| e.iter().map(|&v| v as u64).chain([u64::MAX])),
        ),
    );
    let inner = graph_expander_decomposition(&star, ((r - 1.0) * phi).min(1.0), seed)?;
    let crossing_edges = crossing_count(g, &inner.partition)?;
    Ok(Decomposition {
        partition: inner.partition,
        phi,
        crossing_edges,
        certified: inner.certified,
    })
}
