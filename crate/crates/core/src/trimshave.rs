//! Trim and shave: shrinking blocks by discarding vertices with too many
//! hyperedges leaving their block.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, VertexPartition};

/// Per-vertex block data computed in one pass over the hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperOutput {
    /// 0 for uncovered vertices, `i + 1` for vertices of block `i`.
    pub part: Vec<usize>,
    pub degree: Vec<usize>,
    /// Incident hyperedges lying inside the vertex's own block.
    pub inner_degree: Vec<usize>,
    /// The ids of those hyperedges.
    pub inner_edges: Vec<Vec<usize>>,
}

pub fn trim_shave_helper(g: &Hypergraph, parts: &VertexPartition) -> Result<HelperOutput> {
    let owner = parts.block_of(g.n())?;
    let part: Vec<usize> = owner.iter().map(|o| o.map_or(0, |b| b + 1)).collect();
    let degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut inner_degree = vec![0; g.n()];
    let mut inner_edges = vec![Vec::new(); g.n()];
    for (e, members) in g.edges().iter().enumerate() {
        let p0 = part[members[0]];
        if p0 != 0 && members.iter().all(|&v| part[v] == p0) {
            for &v in members {
                inner_degree[v] += 1;
                inner_edges[v].push(e);
            }
        }
    }
    Ok(HelperOutput {
        part,
        degree,
        inner_degree,
        inner_edges,
    })
}

fn regroup(part: &[usize], blocks: usize) -> VertexPartition {
    let mut out = vec![Vec::new(); blocks];
    for (v, &p) in part.iter().enumerate() {
        if p != 0 {
            out[p - 1].push(v);
        }
    }
    VertexPartition::new(out).expect("regrouping keeps blocks disjoint")
}

fn rank_of(g: &Hypergraph) -> usize {
    g.rank().max(2)
}

/// Removes vertices with `d_X(v) < d(v)/(2r)` until none remain, smallest id first.
pub fn trim(g: &Hypergraph, parts: &VertexPartition) -> Result<VertexPartition> {
    let HelperOutput {
        mut part,
        degree,
        mut inner_degree,
        inner_edges,
    } = trim_shave_helper(g, parts)?;
    let r2 = 2 * rank_of(g);
    let weak =
        |v: usize, inner: &[usize], part: &[usize]| part[v] != 0 && r2 * inner[v] < degree[v];
    let mut internal = vec![false; g.m()];
    for list in &inner_edges {
        for &e in list {
            internal[e] = true;
        }
    }
    let mut queue: BTreeSet<usize> = (0..g.n())
        .filter(|&v| weak(v, &inner_degree, &part))
        .collect();
    while let Some(v) = queue.pop_first() {
        if part[v] == 0 {
            continue;
        }
        part[v] = 0;
        for &e in &inner_edges[v] {
            if !internal[e] {
                continue;
            }
            internal[e] = false;
            for &u in g.edge(e) {
                if u != v {
                    inner_degree[u] -= 1;
                    if weak(u, &inner_degree, &part) {
                        queue.insert(u);
                    }
                }
            }
        }
    }
    Ok(regroup(&part, parts.len()))
}

/// Keeps `v` only if `d_X(v) > (1 − 1/r²) d(v)`, with `d_X` taken from the input blocks.
pub fn shave(g: &Hypergraph, parts: &VertexPartition) -> Result<VertexPartition> {
    let h = trim_shave_helper(g, parts)?;
    let r2 = rank_of(g) * rank_of(g);
    let part: Vec<usize> = (0..g.n())
        .map(|v| {
            if h.part[v] != 0 && r2 * h.inner_degree[v] > (r2 - 1) * h.degree[v] {
                h.part[v]
            } else {
                0
            }
        })
        .collect();
    Ok(regroup(&part, parts.len()))
}

pub fn shave_k(g: &Hypergraph, parts: &VertexPartition, k: usize) -> Result<VertexPartition> {
    let mut current = parts.clone();
    for _ in 0..k {
        current = shave(g, &current)?;
    }
    Ok(current)
}

fn boundary(g: &Hypergraph, mask: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|e| {
            let k = e.iter().filter(|&&v| mask[v]).count();
            k > 0 && k < e.len()
        })
        .count()
}

fn inside(g: &Hypergraph, mask: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|e| e.iter().all(|&v| mask[v]))
        .count()
}

fn mask_of(n: usize, blocks: &VertexPartition) -> Vec<bool> {
    let mut mask = vec![false; n];
    for b in blocks.blocks() {
        for &v in b {
            mask[v] = true;
        }
    }
    mask
}

/// Boundary and interior counts of one block through a trim and a shave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub trimmed: Vec<usize>,
    pub shaved: Vec<usize>,
    pub boundary_x: usize,
    pub boundary_trimmed: usize,
    pub boundary_shaved: usize,
    pub lost_to_trim: usize,
    pub lost_to_shave: usize,
    /// The four bounds, in order: trim loss, trimmed boundary, shave loss, shaved boundary.
    pub holds: [bool; 4],
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// Trims `x`, shaves the result once, and checks the four counting bounds.
pub fn check_trim_shave_claims(g: &Hypergraph, x: &[usize]) -> Result<ClaimReport> {
    let r = rank_of(g);
    let start = VertexPartition::new(vec![x.to_vec()])?;
    let trimmed = trim(g, &start)?;
    let shaved = shave(g, &trimmed)?;
    let (m0, m1, m2) = (
        mask_of(g.n(), &start),
        mask_of(g.n(), &trimmed),
        mask_of(g.n(), &shaved),
    );
    let (b0, b1, b2) = (boundary(g, &m0), boundary(g, &m1), boundary(g, &m2));
    let lost_to_trim = inside(g, &m0) - inside(g, &m1);
    let lost_to_shave = inside(g, &m1) - inside(g, &m2);
    let holds = [
        lost_to_trim <= b0,
        b1 <= 2 * b0,
        lost_to_shave <= r * r * (r - 1) * b1,
        b2 <= r * r * r * b1,
    ];
    let flatten = |p: &VertexPartition| p.blocks().iter().flatten().copied().collect::<Vec<_>>();
    Ok(ClaimReport {
        trimmed: flatten(&trimmed),
        shaved: flatten(&shaved),
        boundary_x: b0,
        boundary_trimmed: b1,
        boundary_shaved: b2,
        lost_to_trim,
        lost_to_shave,
        holds,
    })
}

fn split_sizes(set: &[usize], side: &[bool]) -> usize {
    let a = set.iter().filter(|&&v| side[v]).count();
    a.min(set.len() - a)
}

/// For a min-cut side `cut`: if `x` meets one side of the cut in at most
/// `(δ/6r²)^{1/(r−1)}` vertices, the trimmed block meets it in at most `3r²`.
/// `None` when the premise fails.
pub fn check_trim_intersection(g: &Hypergraph, x: &[usize], cut: &[usize]) -> Result<Option<bool>> {
    let r = rank_of(g) as f64;
    let side = crate::hypergraph::membership(g.n(), cut)?;
    let bound = (g.min_degree() as f64 / (6.0 * r * r)).powf(1.0 / (r - 1.0));
    if split_sizes(x, &side) as f64 > bound {
        return Ok(None);
    }
    let trimmed = trim(g, &VertexPartition::new(vec![x.to_vec()])?)?;
    let kept: Vec<usize> = trimmed.blocks().iter().flatten().copied().collect();
    Ok(Some(split_sizes(&kept, &side) as f64 <= 3.0 * r * r))
}

/// For a min-cut side `cut` of capacity `lambda ≥ r(4r²)^r` whose sides both
/// hold at least `4r²` vertices: if `x` meets one side in between 1 and `3r²`
/// vertices, a shave strictly lowers that count. `None` when a premise fails.
pub fn check_shave_decrement(
    g: &Hypergraph,
    x: &[usize],
    cut: &[usize],
    lambda: usize,
) -> Result<Option<bool>> {
    let r = rank_of(g);
    let side = crate::hypergraph::membership(g.n(), cut)?;
    let threshold = (4 * r * r)
        .checked_pow(r as u32)
        .and_then(|v| v.checked_mul(r));
    let small_side = cut.len().min(g.n() - cut.len());
    let before = split_sizes(x, &side);
    if threshold.is_none_or(|t| lambda < t)
        || small_side < 4 * r * r
        || before == 0
        || before > 3 * r * r
    {
        return Ok(None);
    }
    let shaved = shave(g, &VertexPartition::new(vec![x.to_vec()])?)?;
    let kept: Vec<usize> = shaved.blocks().iter().flatten().copied().collect();
    Ok(Some(split_sizes(&kept, &side) < before))
}
