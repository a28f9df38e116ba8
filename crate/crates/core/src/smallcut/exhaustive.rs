//! Deterministic solver for min-cuts with a small side, by inclusion–exclusion
//! over subset counts.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Cut, Hypergraph};

/// Largest side size accepted by [`exhaustive_small_min_cut`].
pub const DEFAULT_LIMIT: usize = 4;

/// Per-subset counts: `contained[S]` is the number of hyperedges containing
/// `S`, `equal[S]` the number of hyperedges equal to `S`. Keys are sorted
/// vertex lists with `1 ≤ |S| ≤ s`; absent keys count zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubsetCounts {
    pub contained: HashMap<Vec<usize>, usize>,
    pub equal: HashMap<Vec<usize>, usize>,
}

impl SubsetCounts {
    pub fn contained(&self, set: &[usize]) -> usize {
        self.contained.get(set).copied().unwrap_or(0)
    }

    pub fn equal(&self, set: &[usize]) -> usize {
        self.equal.get(set).copied().unwrap_or(0)
    }
}

pub fn subset_counts(g: &Hypergraph, s: usize) -> Result<SubsetCounts> {
    if s == 0 {
        return Err(Error::BadS { s, limit: g.n() });
    }
    let mut counts = SubsetCounts::default();
    for e in g.edges() {
        let k = e.len();
        for mask in 1u64..(1u64 << k) {
            if mask.count_ones() as usize > s {
                continue;
            }
            let sub: Vec<usize> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| e[i])
                .collect();
            *counts.contained.entry(sub).or_insert(0) += 1;
        }
        if k <= s {
            *counts.equal.entry(e.clone()).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

pub fn exhaustive_small_min_cut(g: &Hypergraph, s: usize) -> Result<Cut> {
    exhaustive_small_min_cut_with_limit(g, s, DEFAULT_LIMIT)
}

/// Minimum capacity over all sides `S` with `1 ≤ |S| ≤ s`.
pub fn exhaustive_small_min_cut_with_limit(g: &Hypergraph, s: usize, limit: usize) -> Result<Cut> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if s == 0 || s > limit {
        return Err(Error::BadS { s, limit });
    }
    let s = s.min(n - 1);
    let counts = subset_counts(g, s)?;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for size in 1..=s {
        for set in combinations(n, size) {
            let total: i64 = crossing_terms(&counts, &set).iter().sum();
            let total = total as usize;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, set));
            }
        }
    }
    let (capacity, side) = best.expect("at least one side enumerated");
    let cut = Cut::evaluate(g, side, "exhaustive")?;
    assert_eq!(
        cut.capacity, capacity,
        "inclusion–exclusion disagrees with the cut capacity"
    );
    Ok(cut)
}

/// `h[S']` for every non-empty `S' ⊆ set` (indexed by bitmask over `set`):
/// the number of hyperedges crossing `set` whose intersection with it is exactly `S'`.
pub fn crossing_terms(counts: &SubsetCounts, set: &[usize]) -> Vec<i64> {
    let size = set.len();
    let full = 1usize << size;
    let subset = |mask: usize| -> Vec<usize> {
        (0..size)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| set[i])
            .collect()
    };
    let mut f = vec![0i64; full];
    for (mask, slot) in f.iter_mut().enumerate().skip(1) {
        *slot = counts.contained(&subset(mask)) as i64;
    }
    // Möbius inversion over supersets: f[S'] becomes the number of
    // hyperedges meeting `set` in exactly S'.
    for bit in 0..size {
        for mask in 1..full {
            if mask >> bit & 1 == 0 {
                f[mask] -= f[mask | 1 << bit];
            }
        }
    }
    f[0] = 0;
    for (mask, slot) in f.iter_mut().enumerate().skip(1) {
        *slot -= counts.equal(&subset(mask)) as i64;
    }
    f
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}
