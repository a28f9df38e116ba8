//! Exponential-time reference solvers. Everything here enumerates; nothing is clever.

use crate::error::{Error, Result};
use crate::hypergraph::{Cut, Hypergraph};
use crate::smallcut::bipartite::{BipartiteIncidence, WeightedGraph};
use crate::smallcut::directed::DirectedCutGraph;

pub const DEFAULT_LIMIT: usize = 18;
/// Largest number of candidate separator nodes enumerated by `brute_min_separator`.
pub const SEPARATOR_LIMIT: usize = 24;

fn check_size(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Walks all subsets of `0..k` in Gray-code order. `step(flipped, mask)` sees
/// the bit toggled to reach `mask` (none for the initial empty set).
fn gray_walk(k: usize, mut step: impl FnMut(Option<usize>, u64)) {
    let total = 1u64 << k;
    step(None, 0);
    for i in 1..total {
        step(Some(i.trailing_zeros() as usize), i ^ (i >> 1));
    }
}

/// Exact connectivity and every min-cut side (each given as the side holding vertex 0).
pub fn brute_min_cut(g: &Hypergraph) -> Result<(usize, Vec<Vec<usize>>)> {
    brute_min_cut_with_limit(g, DEFAULT_LIMIT)
}

pub fn brute_min_cut_with_limit(g: &Hypergraph, limit: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let n = g.n();
    check_size(n, limit)?;
    if n < 2 {
        return Err(Error::TooSmall);
    }
    // Vertex 0 is always on the side; bit b stands for vertex b + 1.
    let mut in_side = vec![false; n];
    in_side[0] = true;
    let mut count: Vec<usize> = g.edges().iter().map(|e| usize::from(e[0] == 0)).collect();
    let mut crossing = count.iter().filter(|&&c| c > 0).count();
    let full = (1u64 << (n - 1)) - 1;
    let mut best = usize::MAX;
    let mut masks = Vec::new();
    gray_walk(n - 1, |flipped, mask| {
        if let Some(bit) = flipped {
            let v = bit + 1;
            in_side[v] = !in_side[v];
            for &e in g.incident(v) {
                let len = g.edge(e).len();
                let before = count[e] > 0 && count[e] < len;
                if in_side[v] {
                    count[e] += 1;
                } else {
                    count[e] -= 1;
                }
                let after = count[e] > 0 && count[e] < len;
                match (before, after) {
                    (false, true) => crossing += 1,
                    (true, false) => crossing -= 1,
                    _ => {}
                }
            }
        }
        if mask == full {
            return;
        }
        if crossing < best {
            best = crossing;
            masks.clear();
        }
        if crossing == best {
            masks.push(mask);
        }
    });
    let sides = masks
        .into_iter()
        .map(|mask| {
            let mut side = vec![0];
            side.extend((0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1));
            side
        })
        .collect();
    Ok((best, sides))
}

/// Cheapest cut whose side has between 1 and `s` vertices (first in mask order on ties).
pub fn brute_min_s_cut(g: &Hypergraph, s: usize) -> Result<Cut> {
    let n = g.n();
    check_size(n, DEFAULT_LIMIT)?;
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if s == 0 {
        return Err(Error::BadS { s, limit: n - 1 });
    }
    let edge_masks: Vec<u64> = g
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let full = (1u64 << n) - 1;
    let mut best: Option<(usize, u64)> = None;
    for mask in 1..full {
        if mask.count_ones() as usize > s {
            continue;
        }
        let cap = edge_masks
            .iter()
            .filter(|&&e| e & mask != 0 && e & !mask != 0)
            .count();
        if best.is_none_or(|(c, _)| cap < c) {
            best = Some((cap, mask));
        }
    }
    let (capacity, mask) = best.expect("n >= 2 gives at least one side");
    Ok(Cut {
        side: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
        capacity,
        source: "oracle".to_string(),
    })
}

fn combinations(k: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        k: usize,
        size: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..k {
            if k - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if rec(i + 1, k, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, k, size, &mut Vec::with_capacity(size), &mut f)
}

/// Lightest set of finite-weight nodes whose removal separates `x` from every
/// node of `forbidden`. Fails with `Unbounded` if no finite set does.
pub fn brute_min_separator(
    graph: &WeightedGraph,
    x: usize,
    forbidden: &[usize],
) -> Result<(u64, Vec<usize>)> {
    let mut is_forbidden = vec![false; graph.node_count()];
    for &f in forbidden {
        is_forbidden[f] = true;
    }
    let candidates: Vec<usize> = (0..graph.node_count())
        .filter(|&v| v != x && !is_forbidden[v] && !graph.is_inf(v))
        .collect();
    check_size(candidates.len(), SEPARATOR_LIMIT)?;
    let separates = |removed: &[usize]| {
        let mut blocked = vec![false; graph.node_count()];
        for &v in removed {
            blocked[v] = true;
        }
        let seen = graph.reachable(x, &blocked);
        forbidden.iter().all(|&f| !seen[f])
    };
    let unit = candidates.iter().all(|&v| graph.weight(v) == 1);
    if unit {
        for size in 0..=candidates.len() {
            let mut found = None;
            combinations(candidates.len(), size, |idx| {
                let set: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
                if separates(&set) {
                    found = Some(set);
                    true
                } else {
                    false
                }
            });
            if let Some(set) = found {
                return Ok((size as u64, set));
            }
        }
        return Err(Error::Unbounded);
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    for mask in 0u64..1 << candidates.len() {
        let set: Vec<usize> = (0..candidates.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| candidates[i])
            .collect();
        let w: u64 = set.iter().map(|&v| graph.weight(v)).sum();
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) && separates(&set) {
            best = Some((w, set));
        }
    }
    best.ok_or(Error::Unbounded)
}

/// Minimum weight over all separators of the incidence graph. Every node
/// placement is covered: vertex nodes are split both ways over all proper
/// bipartitions, and each hyperedge node takes its cheapest admissible part.
/// Separators holding a vertex node weigh at least the sentinel and never win.
pub fn brute_min_separator_weight(b: &BipartiteIncidence) -> Result<u64> {
    let n = b.n();
    check_size(n, DEFAULT_LIMIT)?;
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let graph = b.graph();
    let mut best = u64::MAX;
    for mask in 1u64..(1 << (n - 1)) {
        // vertex 0 stays in R; `mask` picks L among vertices 1..n
        let left = |v: usize| v > 0 && mask >> (v - 1) & 1 == 1;
        let mut total = 0u64;
        for e in 0..b.m() {
            let u = b.edge_node(e);
            let nb = graph.neighbors(u);
            let all_left = nb.iter().all(|&v| left(v));
            let all_right = nb.iter().all(|&v| !left(v));
            if !all_left && !all_right {
                total += graph.weight(u);
            }
        }
        best = best.min(total);
    }
    Ok(best)
}

/// Minimum weight of a directed cut of the encoding under its original
/// orientation, over every node set whose vertex part is proper. The choice
/// for each hyperedge's in- and out-node is independent given the vertex part,
/// so all four placements are tried per hyperedge.
pub fn brute_min_directed_cut(d: &DirectedCutGraph) -> Result<u64> {
    let n = d.n();
    check_size(n, DEFAULT_LIMIT)?;
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); d.m()];
    for (id, a) in d.arcs().iter().enumerate() {
        by_edge[a.edge].push(id);
    }
    let arcs = d.arcs();
    let mut best = u64::MAX;
    let mut side = vec![false; d.node_count()];
    for mask in 1u64..(1 << n) - 1 {
        for (v, flag) in side.iter_mut().enumerate().take(n) {
            *flag = mask >> v & 1 == 1;
        }
        let mut total = 0u64;
        for (e, ids) in by_edge.iter().enumerate() {
            let mut cheapest = u64::MAX;
            for choice in 0..4u8 {
                side[d.edge_in(e)] = choice & 1 == 1;
                side[d.edge_out(e)] = choice & 2 == 2;
                let w: u64 = ids
                    .iter()
                    .map(|&a| &arcs[a])
                    .filter(|a| side[a.tail] && !side[a.head])
                    .map(|a| a.weight)
                    .sum();
                cheapest = cheapest.min(w);
            }
            total += cheapest;
        }
        best = best.min(total);
    }
    Ok(best)
}

/// Minimum over splits `S` of `x` of `|E°(S, X∖S)| / min(vol S, vol X∖S)`,
/// volumes taken over all of `g`. Splits where one side has zero volume are
/// skipped; if every split is skipped the value is infinite.
pub fn brute_conductance(g: &Hypergraph, x: &[usize]) -> Result<(f64, Vec<usize>)> {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.len() < 2 {
        return Err(Error::NoSplit);
    }
    check_size(x.len(), DEFAULT_LIMIT + 2)?;
    let mask = crate::hypergraph::membership(g.n(), &x)?;
    // S always holds x[0]; bit b stands for x[b + 1].
    let mut in_s = vec![false; g.n()];
    in_s[x[0]] = true;
    let mut cnt_s = vec![0usize; g.m()];
    let mut cnt_rest = vec![0usize; g.m()];
    for (e, members) in g.edges().iter().enumerate() {
        for &v in members {
            if in_s[v] {
                cnt_s[e] += 1;
            } else if mask[v] {
                cnt_rest[e] += 1;
            }
        }
    }
    let mut touching = (0..g.m())
        .filter(|&e| cnt_s[e] > 0 && cnt_rest[e] > 0)
        .count();
    let vol_x = g.volume(&x);
    let mut vol_s = g.degree(x[0]);
    let full = (1u64 << (x.len() - 1)) - 1;
    let mut best = (f64::INFINITY, vec![x[0]]);
    let mut best_mask = None;
    gray_walk(x.len() - 1, |flipped, m| {
        if let Some(bit) = flipped {
            let v = x[bit + 1];
            in_s[v] = !in_s[v];
            for &e in g.incident(v) {
                let before = cnt_s[e] > 0 && cnt_rest[e] > 0;
                if in_s[v] {
                    cnt_s[e] += 1;
                    cnt_rest[e] -= 1;
                } else {
                    cnt_s[e] -= 1;
                    cnt_rest[e] += 1;
                }
                let after = cnt_s[e] > 0 && cnt_rest[e] > 0;
                match (before, after) {
                    (false, true) => touching += 1,
                    (true, false) => touching -= 1,
                    _ => {}
                }
            }
            if in_s[v] {
                vol_s += g.degree(v);
            } else {
                vol_s -= g.degree(v);
            }
        }
        if m == full {
            return;
        }
        let denom = vol_s.min(vol_x - vol_s);
        if denom == 0 {
            return;
        }
        let value = touching as f64 / denom as f64;
        if value < best.0 {
            best.0 = value;
            best_mask = Some(m);
        }
    });
    if let Some(m) = best_mask {
        let mut side = vec![x[0]];
        side.extend(
            (0..x.len() - 1)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| x[b + 1]),
        );
        best.1 = side;
    }
    Ok(best)
}

/// Ids of hyperedges crossing at least one min-cut.
pub fn min_cut_union(g: &Hypergraph) -> Result<Vec<usize>> {
    let (_, sides) = brute_min_cut(g)?;
    let mut used = vec![false; g.m()];
    for side in &sides {
        let mask = crate::hypergraph::membership(g.n(), side)?;
        for (e, members) in g.edges().iter().enumerate() {
            let k = members.iter().filter(|&&v| mask[v]).count();
            if k > 0 && k < members.len() {
                used[e] = true;
            }
        }
    }
    Ok((0..g.m()).filter(|&e| used[e]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallcut::bipartite::build_bipartite;
    use crate::smallcut::directed::build_directed;

    fn complete3_on4() -> Hypergraph {
        Hypergraph::build(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            false,
        )
        .unwrap()
    }

    #[test]
    fn min_cut_examples() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(brute_min_cut(&g).unwrap(), (1, vec![vec![0]]));

        let (lambda, mut sides) = brute_min_cut(&complete3_on4()).unwrap();
        assert_eq!(lambda, 3);
        sides.sort();
        assert_eq!(
            sides,
            vec![vec![0], vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]
        );

        let g = Hypergraph::build(4, vec![vec![0, 1], vec![2, 3]], false).unwrap();
        assert_eq!(brute_min_cut(&g).unwrap().0, 0);
    }

    #[test]
    fn size_limit() {
        let g = Hypergraph::build(19, vec![vec![0, 1]], false).unwrap();
        assert_eq!(
            brute_min_cut(&g),
            Err(Error::TooLarge {
                size: 19,
                limit: 18
            })
        );
    }

    #[test]
    fn small_side_examples() {
        let g = complete3_on4();
        assert_eq!(brute_min_s_cut(&g, 1).unwrap().capacity, 3);
        assert_eq!(brute_min_s_cut(&g, 3).unwrap().capacity, 3);
        let star = Hypergraph::build(6, (1..6).map(|i| vec![0, i]).collect(), false).unwrap();
        let cut = brute_min_s_cut(&star, 2).unwrap();
        assert_eq!(cut.capacity, 1);
        assert_eq!(cut.side.len(), 1);
        assert_ne!(cut.side[0], 0);
    }

    #[test]
    fn separator_examples() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        let b = build_bipartite(&g);
        assert_eq!(
            brute_min_separator(b.graph(), 0, &[1]).unwrap(),
            (1, vec![2])
        );

        let b = build_bipartite(&complete3_on4());
        assert_eq!(brute_min_separator(b.graph(), 0, &[1, 2, 3]).unwrap().0, 3);
        assert_eq!(brute_min_separator_weight(&b).unwrap(), 3);

        // Path 0 - 1 - 2: the far vertex is reached only through the middle one.
        let path = Hypergraph::build(3, vec![vec![0, 1], vec![1, 2]], false).unwrap();
        let b = build_bipartite(&path);
        assert_eq!(
            brute_min_separator(b.graph(), 1, &[0, 2]).unwrap(),
            (2, vec![3, 4])
        );
        // Adjacent infinite nodes cannot be separated.
        let mut w = WeightedGraph::new(vec![5, 5], 5);
        w.add_edge(0, 1);
        assert_eq!(brute_min_separator(&w, 0, &[1]), Err(Error::Unbounded));
    }

    #[test]
    fn directed_examples() {
        let d = build_directed(&complete3_on4());
        assert_eq!(brute_min_directed_cut(&d).unwrap(), 3);
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(brute_min_directed_cut(&build_directed(&g)).unwrap(), 1);
    }

    #[test]
    fn conductance_examples() {
        let g = Hypergraph::build(2, vec![vec![0, 1]], false).unwrap();
        assert_eq!(brute_conductance(&g, &[0, 1]).unwrap().0, 1.0);
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push(vec![a, b]);
            }
        }
        let k4 = Hypergraph::build(4, edges, false).unwrap();
        let (value, side) = brute_conductance(&k4, &[0, 1, 2, 3]).unwrap();
        assert!((value - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(side.len(), 2);
        assert_eq!(brute_conductance(&k4, &[2]), Err(Error::NoSplit));
    }

    #[test]
    fn union_examples() {
        assert_eq!(min_cut_union(&complete3_on4()).unwrap(), vec![0, 1, 2, 3]);
        let path = Hypergraph::build(3, vec![vec![0, 1], vec![1, 2]], false).unwrap();
        assert_eq!(min_cut_union(&path).unwrap(), vec![0, 1]);
    }
}
