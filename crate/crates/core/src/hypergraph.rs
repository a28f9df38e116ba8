//! Hypergraph storage, cut evaluation, degree arithmetic and contraction.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What to do with raw hyperedges while building.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep parallel copies of the same vertex set.
    pub allow_multi: bool,
    /// Silently discard edges that collapse to a single vertex instead of failing.
    pub drop_singletons: bool,
}

/// An unweighted hypergraph on vertices `0..n`.
///
/// Each hyperedge is stored sorted and duplicate-free with at least two
/// vertices. Parallel hyperedges are only present when `is_multi()` is true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    p: usize,
    rank: usize,
    multi: bool,
}

impl Hypergraph {
    pub fn build(n: usize, raw_edges: Vec<Vec<usize>>, allow_multi: bool) -> Result<Self> {
        Self::build_with(
            n,
            raw_edges,
            BuildOptions {
                allow_multi,
                drop_singletons: false,
            },
        )
    }

    pub fn build_with(n: usize, raw_edges: Vec<Vec<usize>>, opts: BuildOptions) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut seen = HashSet::new();
        for (index, mut e) in raw_edges.into_iter().enumerate() {
            if let Some(&vertex) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            e.sort_unstable();
            e.dedup();
            if e.len() < 2 {
                if opts.drop_singletons {
                    continue;
                }
                return Err(Error::SingletonHyperedge { index });
            }
            if !opts.allow_multi && !seen.insert(e.clone()) {
                return Err(Error::DuplicateHyperedge { index });
            }
            edges.push(e);
        }
        Ok(Self::from_canonical(n, edges, opts.allow_multi))
    }

    /// Assembles a hypergraph from edges that are already sorted, deduplicated
    /// and of size at least two.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Vec<usize>>, multi: bool) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut p = 0;
        let mut rank = 0;
        for (id, e) in edges.iter().enumerate() {
            debug_assert!(e.len() >= 2 && e.windows(2).all(|w| w[0] < w[1]));
            p += e.len();
            rank = rank.max(e.len());
            for &v in e {
                incidence[v].push(id);
            }
        }
        Hypergraph {
            n,
            edges,
            incidence,
            p,
            rank,
            multi,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Total size: the sum of all hyperedge cardinalities.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Largest hyperedge cardinality (0 when there are no edges).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn volume(&self, set: &[usize]) -> usize {
        set.iter().map(|&v| self.degree(v)).sum()
    }

    /// The sub-hypergraph keeping only the listed edges, in the listed order.
    pub fn subgraph(&self, edge_ids: &[usize]) -> Hypergraph {
        let edges = edge_ids.iter().map(|&i| self.edges[i].clone()).collect();
        Self::from_canonical(self.n, edges, self.multi)
    }

    /// Connected-component label of each vertex, labels numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &e in &self.incidence[u] {
                    for &w in &self.edges[e] {
                        if label[w] == usize::MAX {
                            label[w] = next;
                            stack.push(w);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Edges with the same multiset of members in a canonical order, for comparisons
    /// that ignore edge order.
    pub fn canonical_edges(&self) -> Vec<Vec<usize>> {
        let mut edges = self.edges.clone();
        edges.sort();
        edges
    }
}

/// Membership mask for `set`, checking that every id is a vertex.
pub fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Number of hyperedges meeting both `side` and its complement.
pub fn cut_capacity(g: &Hypergraph, side: &[usize]) -> Result<usize> {
    let mask = membership(g.n, side)?;
    let count = mask.iter().filter(|&&b| b).count();
    if count == 0 || count == g.n {
        return Err(Error::EmptySide);
    }
    Ok(capacity_of_mask(g, &mask))
}

pub(crate) fn capacity_of_mask(g: &Hypergraph, mask: &[bool]) -> usize {
    g.edges
        .iter()
        .filter(|e| {
            let inside = e.iter().filter(|&&v| mask[v]).count();
            inside > 0 && inside < e.len()
        })
        .count()
}

/// d_X(v): incident hyperedges of `v` lying entirely inside `x`.
pub fn degree_within(g: &Hypergraph, v: usize, x: &[usize]) -> Result<usize> {
    let mask = membership(g.n, x)?;
    if v >= g.n || !mask[v] {
        return Err(Error::VertexNotInSet(v));
    }
    Ok(g.incidence[v]
        .iter()
        .filter(|&&e| g.edges[e].iter().all(|&w| mask[w]))
        .count())
}

/// Edge-id sets relating two vertex sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSets {
    /// Edges contained in S.
    pub inside: Vec<usize>,
    /// Edges contained in S ∪ T that meet both S and T.
    pub within: Vec<usize>,
    /// Edges meeting both S and T.
    pub touching: Vec<usize>,
}

pub fn edge_sets(g: &Hypergraph, s: &[usize], t: &[usize]) -> Result<EdgeSets> {
    let ms = membership(g.n, s)?;
    let mt = membership(g.n, t)?;
    let mut out = EdgeSets::default();
    for (id, e) in g.edges.iter().enumerate() {
        let meets_s = e.iter().any(|&v| ms[v]);
        let meets_t = e.iter().any(|&v| mt[v]);
        if e.iter().all(|&v| ms[v]) {
            out.inside.push(id);
        }
        if meets_s && meets_t {
            out.touching.push(id);
            if e.iter().all(|&v| ms[v] || mt[v]) {
                out.within.push(id);
            }
        }
    }
    Ok(out)
}

/// For `t ⊆ s` returns `|E(T, S∖T)|` and `(vol_S(T) − r|E[T]|)/(r−1)`.
pub fn check_nested_count_bound(g: &Hypergraph, t: &[usize], s: &[usize]) -> Result<(usize, f64)> {
    let ms = membership(g.n, s)?;
    let mt = membership(g.n, t)?;
    if (0..g.n).any(|v| mt[v] && !ms[v]) {
        return Err(Error::NotNested);
    }
    let rest: Vec<usize> = (0..g.n).filter(|&v| ms[v] && !mt[v]).collect();
    let t_set: Vec<usize> = (0..g.n).filter(|&v| mt[v]).collect();
    let lhs = edge_sets(g, &t_set, &rest)?.within.len();
    let mut vol_s_t = 0usize;
    let mut inside_t = 0usize;
    for e in &g.edges {
        if e.iter().all(|&v| ms[v]) {
            vol_s_t += e.iter().filter(|&&v| mt[v]).count();
            if e.iter().all(|&v| mt[v]) {
                inside_t += 1;
            }
        }
    }
    let r = g.rank.max(2) as f64;
    let rhs = (vol_s_t as f64 - r * inside_t as f64) / (r - 1.0);
    Ok((lhs, rhs))
}

/// Disjoint vertex blocks; vertices outside every block are implicit singletons.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Sorts each block, drops empty ones and rejects overlaps.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            for &v in &b {
                if !seen.insert(v) {
                    return Err(Error::OverlappingBlocks(v));
                }
            }
            if !b.is_empty() {
                out.push(b);
            }
        }
        Ok(VertexPartition { blocks: out })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Some(i)` for vertices in block `i`, `None` for uncovered vertices.
    pub fn block_of(&self, n: usize) -> Result<Vec<Option<usize>>> {
        let mut owner = vec![None; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                owner[v] = Some(i);
            }
        }
        Ok(owner)
    }
}

/// Merges each block into one vertex. New ids follow the smallest original member.
/// Returns the contracted multi-hypergraph and the old → new vertex map.
pub fn contract(g: &Hypergraph, partition: &VertexPartition) -> Result<(Hypergraph, Vec<usize>)> {
    let owner = partition.block_of(g.n)?;
    let mut block_id = vec![usize::MAX; partition.len()];
    let mut map = vec![0; g.n];
    let mut next = 0;
    for v in 0..g.n {
        map[v] = match owner[v] {
            Some(b) => {
                if block_id[b] == usize::MAX {
                    block_id[b] = next;
                    next += 1;
                }
                block_id[b]
            }
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let mut edges = Vec::with_capacity(g.m());
    for e in &g.edges {
        let mut f: Vec<usize> = e.iter().map(|&v| map[v]).collect();
        f.sort_unstable();
        f.dedup();
        if f.len() >= 2 {
            edges.push(f);
        }
    }
    Ok((Hypergraph::from_canonical(next, edges, true), map))
}

/// One side of a bipartition with its capacity and the algorithm that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: Vec<usize>,
    pub capacity: usize,
    pub source: String,
}

impl Cut {
    /// Builds a cut for `side`, computing its capacity on `g`.
    pub fn evaluate(g: &Hypergraph, side: Vec<usize>, source: &str) -> Result<Cut> {
        let mut side = side;
        side.sort_unstable();
        side.dedup();
        let capacity = cut_capacity(g, &side)?;
        Ok(Cut {
            side,
            capacity,
            source: source.to_string(),
        })
    }

    /// Zero-capacity cut given by the component of vertex 0, if `g` is disconnected.
    pub fn component(g: &Hypergraph, source: &str) -> Option<Cut> {
        let label = g.components();
        if g.n < 2 || label.iter().all(|&c| c == 0) {
            return None;
        }
        let side = (0..g.n).filter(|&v| label[v] == 0).collect();
        Some(Cut {
            side,
            capacity: 0,
            source: source.to_string(),
        })
    }

    pub fn size(&self, n: usize) -> usize {
        self.side.len().min(n - self.side.len())
    }
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

    fn k4() -> Hypergraph {
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push(vec![a, b]);
            }
        }
        Hypergraph::build(4, edges, false).unwrap()
    }

    #[test]
    fn build_counts() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!((g.p(), g.rank(), g.m()), (2, 2, 1));
        let g = complete3_on4();
        assert_eq!((g.p(), g.rank(), g.m()), (12, 3, 4));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Hypergraph::build(3, vec![vec![0]], false),
            Err(Error::SingletonHyperedge { index: 0 })
        );
        assert_eq!(
            Hypergraph::build(3, vec![vec![0, 1], vec![1, 0]], false),
            Err(Error::DuplicateHyperedge { index: 1 })
        );
        assert_eq!(
            Hypergraph::build(3, vec![vec![0, 3]], false),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        let g = Hypergraph::build_with(
            3,
            vec![vec![1, 1], vec![0, 2]],
            BuildOptions {
                allow_multi: false,
                drop_singletons: true,
            },
        )
        .unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn capacities() {
        let g = complete3_on4();
        assert_eq!(cut_capacity(&g, &[0]).unwrap(), 3);
        assert_eq!(cut_capacity(&g, &[0, 1]).unwrap(), 4);
        let single = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(cut_capacity(&single, &[0]).unwrap(), 1);
        assert_eq!(cut_capacity(&single, &[]), Err(Error::EmptySide));
        assert_eq!(cut_capacity(&single, &[0, 1]), Err(Error::EmptySide));
    }

    #[test]
    fn inner_degrees() {
        let single = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(degree_within(&single, 0, &[0, 1]).unwrap(), 1);
        assert_eq!(degree_within(&single, 0, &[0]).unwrap(), 0);
        assert_eq!(degree_within(&k4(), 0, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(
            degree_within(&k4(), 3, &[0, 1]),
            Err(Error::VertexNotInSet(3))
        );
    }

    #[test]
    fn edge_set_examples() {
        let g = Hypergraph::build(3, vec![vec![0, 1, 2]], false).unwrap();
        let sets = edge_sets(&g, &[0], &[1]).unwrap();
        assert!(sets.inside.is_empty() && sets.within.is_empty());
        assert_eq!(sets.touching, vec![0]);
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        let sets = edge_sets(&g, &[0], &[1]).unwrap();
        assert_eq!(sets.within, vec![0]);
        assert_eq!(sets.touching, vec![0]);
        let g = complete3_on4();
        let all = [0, 1, 2, 3];
        let sets = edge_sets(&g, &all, &all).unwrap();
        assert_eq!(sets.inside.len(), 4);
        assert_eq!(sets.within.len(), 4);
    }

    #[test]
    fn nested_bound_examples() {
        let g = Hypergraph::build(3, vec![vec![0, 1, 2]], false).unwrap();
        let (lhs, rhs) = check_nested_count_bound(&g, &[0], &[0, 1, 2]).unwrap();
        assert_eq!(lhs, 1);
        assert!((rhs - 0.5).abs() < 1e-12);
        let (lhs, rhs) = check_nested_count_bound(&g, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(lhs, 0);
        assert!(rhs <= 0.0);
        assert_eq!(
            check_nested_count_bound(&g, &[0, 1], &[0]),
            Err(Error::NotNested)
        );
    }

    #[test]
    fn contraction_examples() {
        let g = complete3_on4();
        let (h, map) = contract(&g, &VertexPartition::singletons(4)).unwrap();
        assert_eq!(h.canonical_edges(), g.canonical_edges());
        assert_eq!(map, vec![0, 1, 2, 3]);

        let path = Hypergraph::build(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]], false).unwrap();
        let (h, map) = contract(&path, &VertexPartition::new(vec![vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(h.n(), 3);
        assert_eq!(map, vec![0, 0, 1, 2]);
        assert!(h.is_multi());

        let (h, _) = contract(&g, &VertexPartition::new(vec![vec![0, 1, 2, 3]]).unwrap()).unwrap();
        assert_eq!((h.n(), h.m()), (1, 0));
    }

    #[test]
    fn overlapping_blocks_rejected() {
        assert_eq!(
            VertexPartition::new(vec![vec![0, 1], vec![1, 2]]),
            Err(Error::OverlappingBlocks(1))
        );
    }

    #[test]
    fn component_cut() {
        let g = Hypergraph::build(4, vec![vec![0, 1], vec![2, 3]], false).unwrap();
        let c = Cut::component(&g, "test").unwrap();
        assert_eq!(c.side, vec![0, 1]);
        assert_eq!(c.capacity, 0);
        assert!(Cut::component(&k4(), "test").is_none());
    }
}
