//! Sparse connectivity certificates and the connectivity estimate built on them.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::ordering::slow_min_cut;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Union of `k` greedy spanning sub-hypergraphs. Each round scans the
/// remaining hyperedges in input order and keeps those joining two or more
/// components of the round's forest. Every cut keeps at least
/// `min(k, capacity)` of its hyperedges.
pub fn certificate(g: &Hypergraph, k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::BadK);
    }
    let mut keep = vec![false; g.m()];
    let mut remaining: Vec<usize> = (0..g.m()).collect();
    for _ in 0..k {
        if remaining.is_empty() {
            break;
        }
        let mut uf = UnionFind::new(g.n());
        let mut rest = Vec::new();
        for e in remaining {
            let members = g.edge(e);
            let root = uf.find(members[0]);
            if members[1..].iter().any(|&v| uf.find(v) != root) {
                keep[e] = true;
                for &v in &members[1..] {
                    uf.union(members[0], v);
                }
            } else {
                rest.push(e);
            }
        }
        remaining = rest;
    }
    let kept: Vec<usize> = (0..g.m()).filter(|&e| keep[e]).collect();
    Ok(g.subgraph(&kept))
}

/// Returns `λ + 1`, which satisfies `λ < k ≤ 3λ` whenever `λ ≥ 1`, or 0 when
/// the hypergraph is disconnected. Certificates of doubling strength are
/// solved exactly until the answer falls below the strength.
pub fn approximate_connectivity(g: &Hypergraph) -> Result<usize> {
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut k = 1;
    loop {
        let sparse = certificate(g, k)?;
        let lambda = slow_min_cut(&sparse)?.capacity;
        if lambda < k {
            return Ok(lambda + 1);
        }
        k *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_complete_uniform;

    #[test]
    fn certificate_examples() {
        let g = gen_complete_uniform(4, 3).unwrap();
        assert_eq!(certificate(&g, 4).unwrap(), g);
        let k4 = gen_complete_uniform(4, 2).unwrap();
        let tree = certificate(&k4, 1).unwrap();
        assert_eq!(tree.m(), 3);
        assert!(tree.is_connected());
        assert_eq!(certificate(&k4, 0), Err(Error::BadK));
    }

    #[test]
    fn connectivity_examples() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(approximate_connectivity(&g).unwrap(), 2);
        assert_eq!(
            approximate_connectivity(&gen_complete_uniform(4, 3).unwrap()).unwrap(),
            4
        );
        let split = Hypergraph::build(4, vec![vec![0, 1], vec![2, 3]], false).unwrap();
        assert_eq!(approximate_connectivity(&split).unwrap(), 0);
    }
}
