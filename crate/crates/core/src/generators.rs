//! Instance generators: random hypergraphs, planted small cuts, and two
//! structured families with known connectivity.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexPartition};
use crate::ordering::slow_min_cut;
use crate::seed::rng_from;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `m` distinct random hyperedges with sizes uniform in `[2, min(r, n)]`.
pub fn gen_random(n: usize, r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    let top = r.min(n);
    let capacity: u128 = (2..=top).map(|i| binomial(n, i)).sum();
    if (m as u128) > capacity || (m > 0 && r < 2) {
        return Err(Error::Infeasible(format!(
            "{m} distinct hyperedges of size 2..={r} on {n} vertices"
        )));
    }
    let mut rng = rng_from(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let size = rng.gen_range(2..=top);
        let mut e = index::sample(&mut rng, n, size).into_vec();
        e.sort_unstable();
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Hypergraph::build(n, edges, false)
}

/// Every `r`-subset of `0..n`, in lexicographic order.
pub fn gen_complete_uniform(n: usize, r: usize) -> Result<Hypergraph> {
    if r < 2 || n < r {
        return Err(Error::BadParams(format!(
            "complete {r}-uniform on {n} vertices"
        )));
    }
    Hypergraph::build(n, subsets(&(0..n).collect::<Vec<_>>(), r), false)
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Exact connectivity: oracle enumeration at oracle scale, the exact ordering solver above it.
fn exact_lambda(g: &Hypergraph) -> usize {
    if g.n() <= 14 {
        if let Ok((lambda, _)) = crate::oracle::brute_min_cut(g) {
            return lambda;
        }
    }
    slow_min_cut(g).map_or(0, |c| c.capacity)
}

/// A hypergraph whose side `{0, .., s-1}` is cut by exactly `lam` hyperedges
/// and whose other cuts all cost at least `lam`. Returns the graph and the side.
pub fn gen_planted_small_cut(
    n: usize,
    r: usize,
    s: usize,
    lam: usize,
    seed: u64,
) -> Result<(Hypergraph, Vec<usize>)> {
    gen_planted_small_cut_dense(n, r, s, lam, 0, seed)
}

/// Same as [`gen_planted_small_cut`], then keeps adding random hyperedges
/// inside the large side until the total size reaches `min_p`.
pub fn gen_planted_small_cut_dense(
    n: usize,
    r: usize,
    s: usize,
    lam: usize,
    min_p: usize,
    seed: u64,
) -> Result<(Hypergraph, Vec<usize>)> {
    if s == 0 || 2 * s >= n || lam == 0 || r < 2 {
        return Err(Error::Infeasible(format!(
            "planted side s={s}, lam={lam}, n={n}, r={r}"
        )));
    }
    let mut rng = rng_from(seed);
    let side: Vec<usize> = (0..s).collect();
    let rest: Vec<usize> = (s..n).collect();
    let w = rest.len();
    let top = r.min(w);
    let best_rest: u128 = (2..=top).map(|i| binomial(w - 1, i - 1)).sum();
    if lam as u128 >= best_rest {
        return Err(Error::Infeasible(format!(
            "the large side cannot beat {lam} with {w} vertices"
        )));
    }

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut push = |e: Vec<usize>, edges: &mut Vec<Vec<usize>>| {
        if seen.insert(e.clone()) {
            edges.push(e);
            true
        } else {
            false
        }
    };

    // Complete the small side with every subset of size 2..=r.
    for size in 2..=r.min(s) {
        for e in subsets(&side, size) {
            push(e, &mut edges);
        }
    }

    // Crossing edges: each takes a chunk of the small side plus some large-side vertices.
    let chunk = s.min(r - 1);
    let mut crossing = 0;
    let mut attempts = 0;
    while crossing < lam {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Infeasible(format!(
                "could not place {lam} crossing hyperedges"
            )));
        }
        let start = (crossing * chunk) % s;
        let mut e: Vec<usize> = (0..chunk).map(|i| side[(start + i) % s]).collect();
        let extra = rng.gen_range(1..=(r - chunk).min(w));
        e.extend(
            index::sample(&mut rng, w, extra)
                .into_iter()
                .map(|i| rest[i]),
        );
        e.sort_unstable();
        e.dedup();
        if push(e, &mut edges) {
            crossing += 1;
        }
    }

    // Large side: a clique first, then random hyperedges until it is well connected.
    for e in subsets(&rest, 2) {
        push(e, &mut edges);
    }
    let inner_lambda = |edges: &[Vec<usize>]| {
        let inner: Vec<Vec<usize>> = edges
            .iter()
            .filter(|e| e[0] >= s)
            .map(|e| e.iter().map(|&v| v - s).collect())
            .collect();
        Hypergraph::build(w, inner, false).map_or(0, |h| exact_lambda(&h))
    };
    let size_of = |edges: &[Vec<usize>]| edges.iter().map(Vec::len).sum::<usize>();
    let mut misses = 0;
    // Adding hyperedges never lowers connectivity, so one success settles it.
    let mut strong = inner_lambda(&edges) > lam;
    while (!strong || size_of(&edges) < min_p) && top >= 3 {
        let mut added = 0;
        while added < w.max(16) {
            let size = rng.gen_range(3..=top);
            let mut e: Vec<usize> = index::sample(&mut rng, w, size)
                .into_iter()
                .map(|i| rest[i])
                .collect();
            e.sort_unstable();
            if push(e, &mut edges) {
                added += 1;
                misses = 0;
            } else {
                misses += 1;
                if misses > 10_000 {
                    return Err(Error::Infeasible("large side saturated".to_string()));
                }
            }
        }
        if !strong {
            strong = inner_lambda(&edges) > lam;
        }
    }
    if !strong || size_of(&edges) < min_p {
        return Err(Error::Infeasible(format!("large side cannot exceed {lam}")));
    }
    edges.shuffle(&mut rng);
    let g = Hypergraph::build(n, edges, false)?;
    let planted = crate::hypergraph::cut_capacity(&g, &side)?;
    if planted != lam || exact_lambda(&g) != lam {
        return Err(Error::Infeasible(format!(
            "planted cut does not realize connectivity {lam}"
        )));
    }
    Ok((g, side))
}

/// Pairs `(u_i, v_i)` for `i < n/2` plus three hubs `a, b, c`. Every two pairs
/// share three 5-element hyperedges (one per hub) and each pair has its own
/// 2-element hyperedge. Vertex ids: `u_i = i`, `v_i = n/2 + i`, hubs `n..n+3`.
pub fn gen_nontrivial_example(n: usize) -> Result<Hypergraph> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 100 {
        log::warn!("pair construction with n = {n} < 100: min-cut size guarantee does not apply");
    }
    let half = n / 2;
    let hubs = [n, n + 1, n + 2];
    let mut edges = Vec::with_capacity(3 * half * half.saturating_sub(1) / 2 + half);
    for i in 0..half {
        for j in i + 1..half {
            for &hub in &hubs {
                edges.push(vec![i, half + i, j, half + j, hub]);
            }
        }
    }
    for i in 0..half {
        edges.push(vec![i, half + i]);
    }
    Hypergraph::build(n + 3, edges, false)
}

/// Integer square root when `n` is a perfect square.
fn exact_sqrt(n: usize) -> Option<usize> {
    let q = (n as f64).sqrt().round() as usize;
    (q * q == n).then_some(q)
}

/// Blow-up of the complete `r`-uniform hypergraph on `q = √n` super-vertices.
/// Super-vertex `u` becomes the block `Q_u = {u·q, .., u·q + q − 1}`, which is
/// itself made complete `r`-uniform; the super-hyperedges at `u` are spread
/// over `Q_u` round-robin in lexicographic order.
pub fn gen_tight_example(n: usize, r: usize) -> Result<Hypergraph> {
    let q = exact_sqrt(n).ok_or(Error::NotSquare(n))?;
    if r < 2 || q < r + 1 {
        return Err(Error::BadParams(format!(
            "need sqrt(n) >= r + 1, got sqrt(n) = {q}, r = {r}"
        )));
    }
    let supers: Vec<usize> = (0..q).collect();
    let mut slot = vec![0usize; q];
    let mut edges = Vec::new();
    for e in subsets(&supers, r) {
        let members = e
            .iter()
            .map(|&u| {
                let v = u * q + slot[u] % q;
                slot[u] += 1;
                v
            })
            .collect();
        edges.push(members);
    }
    for u in 0..q {
        let block: Vec<usize> = (u * q..(u + 1) * q).collect();
        edges.extend(subsets(&block, r));
    }
    Hypergraph::build(n, edges, false)
}

/// The super-vertex blocks `Q_u` of [`gen_tight_example`].
pub fn tight_example_blocks(n: usize) -> Result<VertexPartition> {
    let q = exact_sqrt(n).ok_or(Error::NotSquare(n))?;
    VertexPartition::new((0..q).map(|u| (u * q..(u + 1) * q).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::cut_capacity;
    use crate::oracle::brute_min_cut;

    #[test]
    fn random_examples() {
        assert_eq!(gen_random(5, 3, 0, 1).unwrap().m(), 0);
        let g = gen_random(6, 2, 15, 9).unwrap();
        assert_eq!(
            g.canonical_edges(),
            gen_complete_uniform(6, 2).unwrap().canonical_edges()
        );
        assert_eq!(
            gen_random(7, 4, 30, 5).unwrap(),
            gen_random(7, 4, 30, 5).unwrap()
        );
        assert!(matches!(gen_random(3, 2, 4, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn complete_examples() {
        assert_eq!(gen_complete_uniform(4, 3).unwrap().m(), 4);
        assert_eq!(gen_complete_uniform(3, 3).unwrap().m(), 1);
        assert!(matches!(
            gen_complete_uniform(2, 3),
            Err(Error::BadParams(_))
        ));
        for n in 3..=8 {
            for r in 2..=n.min(4) {
                let g = gen_complete_uniform(n, r).unwrap();
                assert_eq!(brute_min_cut(&g).unwrap().0 as u128, binomial(n - 1, r - 1));
            }
        }
    }

    #[test]
    fn planted_examples() {
        let (g, side) = gen_planted_small_cut(8, 2, 1, 1, 3).unwrap();
        assert_eq!(side, vec![0]);
        let (lambda, sides) = brute_min_cut(&g).unwrap();
        assert_eq!(lambda, 1);
        assert!(sides.contains(&vec![0]));

        let (g, side) = gen_planted_small_cut(10, 3, 2, 3, 11).unwrap();
        assert_eq!(brute_min_cut(&g).unwrap().0, 3);
        assert_eq!(cut_capacity(&g, &side).unwrap(), 3);

        assert!(matches!(
            gen_planted_small_cut(5, 2, 1, 3, 0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn pair_construction_counts() {
        let g = gen_nontrivial_example(100).unwrap();
        assert_eq!((g.n(), g.m(), g.rank()), (103, 3725, 5));
        assert_eq!(cut_capacity(&g, &[0, 50]).unwrap(), 147);
        assert_eq!(gen_nontrivial_example(7), Err(Error::OddN(7)));
    }

    #[test]
    fn tight_construction_counts() {
        let g = gen_tight_example(64, 3).unwrap();
        assert_eq!((g.n(), g.m()), (64, 504));
        for block in tight_example_blocks(64).unwrap().blocks() {
            assert_eq!(cut_capacity(&g, block).unwrap(), 21);
        }
        assert_eq!(gen_tight_example(60, 3), Err(Error::NotSquare(60)));
    }
}
