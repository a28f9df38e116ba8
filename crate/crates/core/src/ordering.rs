//! Exact min-cut by repeated maximum-adjacency orderings and pendant-pair merging.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::hypergraph::{contract, Cut, Hypergraph, VertexPartition};

/// Maximum-adjacency ordering starting at vertex 0.
///
/// A hyperedge becomes active when its first vertex joins the prefix; the key
/// of an outside vertex is the number of active hyperedges containing it.
/// Ties go to the smallest id. Also returns the degree of the last vertex.
pub fn ma_ordering(g: &Hypergraph) -> Result<(Vec<usize>, usize)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let mut in_prefix = vec![false; n];
    let mut key = vec![0usize; n];
    let mut active = vec![false; g.m()];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (1..n).map(|v| (0, Reverse(v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut next = Some(0);
    while let Some(v) = next {
        in_prefix[v] = true;
        order.push(v);
        for &e in g.incident(v) {
            if active[e] {
                continue;
            }
            active[e] = true;
            for &w in g.edge(e) {
                if !in_prefix[w] {
                    key[w] += 1;
                    heap.push((key[w], Reverse(w)));
                }
            }
        }
        next = None;
        while let Some((k, Reverse(w))) = heap.pop() {
            if !in_prefix[w] && key[w] == k {
                next = Some(w);
                break;
            }
        }
    }
    let last = order[n - 1];
    Ok((order, g.degree(last)))
}

/// Exact minimum cut. Disconnected inputs yield the component of vertex 0.
pub fn slow_min_cut(g: &Hypergraph) -> Result<Cut> {
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    if let Some(cut) = Cut::component(g, "slow") {
        return Ok(cut);
    }
    let mut members: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    let mut current = g.clone();
    let mut best: Option<(usize, Vec<usize>)> = None;
    while current.n() > 1 {
        let (order, cap) = ma_ordering(&current)?;
        let t = order[order.len() - 1];
        let s = order[order.len() - 2];
        if best.as_ref().is_none_or(|(c, _)| cap < *c) {
            best = Some((cap, members[t].clone()));
        }
        let merge = VertexPartition::new(vec![vec![s, t]])?;
        let (next, map) = contract(&current, &merge)?;
        let mut merged = vec![Vec::new(); next.n()];
        for (v, group) in members.into_iter().enumerate() {
            merged[map[v]].extend(group);
        }
        members = merged;
        current = next;
    }
    let (cap, side) = best.expect("at least one phase ran");
    let cut = Cut::evaluate(g, side, "slow")?;
    debug_assert_eq!(cut.capacity, cap);
    Ok(cut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize, r: usize) -> Hypergraph {
        crate::generators::gen_complete_uniform(n, r).unwrap()
    }

    #[test]
    fn ordering_examples() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(ma_ordering(&g).unwrap(), (vec![0, 1], 1));
        assert_eq!(ma_ordering(&complete(4, 2)).unwrap().1, 3);
        assert_eq!(ma_ordering(&complete(4, 3)).unwrap().1, 3);
        let one = Hypergraph::build(1, vec![], false).unwrap();
        assert_eq!(ma_ordering(&one), Err(Error::TooSmall));
    }

    #[test]
    fn slow_examples() {
        let path = Hypergraph::build(3, vec![vec![0, 1], vec![1, 2]], false).unwrap();
        assert_eq!(slow_min_cut(&path).unwrap().capacity, 1);
        let cut = slow_min_cut(&complete(4, 3)).unwrap();
        assert_eq!(cut.capacity, 3);
        assert_eq!(cut.size(4), 1);
        let split = Hypergraph::build(4, vec![vec![0, 1], vec![2, 3]], false).unwrap();
        assert_eq!(slow_min_cut(&split).unwrap().capacity, 0);
    }
}
