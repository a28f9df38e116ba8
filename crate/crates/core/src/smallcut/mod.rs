//! Min-cuts whose smaller side has few vertices.

pub mod bipartite;
pub mod directed;
pub mod exhaustive;
pub mod flow;
pub mod kernel;

use rayon::prelude::*;

pub use bipartite::{
    build_bipartite, cut_from_separator, is_t_scratch, separator_from_cut, BipartiteIncidence,
    Separator, WeightedGraph,
};
pub use directed::{
    build_directed, small_size_small_min_cut, Arc, DirectedCutGraph, SearchOutcome,
};
pub use exhaustive::{
    exhaustive_small_min_cut, exhaustive_small_min_cut_with_limit, subset_counts, SubsetCounts,
};
pub use flow::min_vertex_separator;
pub use kernel::{
    find_kernels, find_kernels_with_sample, kernel_for, kernel_min_separator, lift_separator,
    Kernel,
};

use crate::error::{Error, Result};
use crate::hypergraph::{Cut, Hypergraph};
use crate::log2_ceil;
use crate::ordering::slow_min_cut;
use crate::seed::{derive_seed, rng_from};
use crate::sparsify::approximate_connectivity;
use directed::pow_saturating;

/// Default repetition factor: each randomized stage runs `c·⌈log₂ n⌉` times.
pub const REPETITIONS: usize = 3;

/// Which randomized search the dispatcher uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    SmallLambda,
    BigLambda,
}

fn rank_term(g: &Hypergraph, s: usize) -> (u64, u64) {
    let r = g.rank().max(2) as u64;
    (r, pow_saturating(s as u64, r as u32))
}

/// Mark budget of one local search; below it the wrapper solves directly.
pub fn local_search_budget(g: &Hypergraph, k: usize, s: usize) -> u64 {
    let (r, sr) = rank_term(g, s);
    512u64
        .saturating_mul((k as u64).saturating_mul(k as u64))
        .saturating_mul(r)
        .saturating_mul(sr)
}

fn better(a: Option<(usize, Cut)>, b: Option<(usize, Cut)>) -> Option<(usize, Cut)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.1.capacity, y.0) < (x.1.capacity, x.0) {
            y
        } else {
            x
        }),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn small_lambda_small_cut(g: &Hypergraph, s: usize, seed: u64) -> Result<Cut> {
    small_lambda_small_cut_with(g, s, seed, REPETITIONS)
}

/// Randomized local search from every vertex, `c·⌈log₂ n⌉` times each.
pub fn small_lambda_small_cut_with(g: &Hypergraph, s: usize, seed: u64, c: usize) -> Result<Cut> {
    let k = approximate_connectivity(g)?;
    if k == 0 {
        return Ok(Cut::component(g, "small-lambda").expect("disconnected"));
    }
    if g.p() as u64 <= local_search_budget(g, k, s) {
        return slow_min_cut(g);
    }
    let n = g.n();
    let reps = c.max(1) * log2_ceil(n).max(1);
    let base = build_directed(g);
    let best = (0..n)
        .into_par_iter()
        .map_init(
            || base.clone(),
            |d, x| {
                let mut best = None;
                for rep in 0..reps {
                    let index = rep * n + x;
                    let mut rng = rng_from(derive_seed(seed, index as u64));
                    let Some(nodes) = small_size_small_min_cut(d, x, k, s, &mut rng) else {
                        continue;
                    };
                    let side: Vec<usize> = nodes.into_iter().filter(|&u| u < n).collect();
                    if side.is_empty() || side.len() == n {
                        continue;
                    }
                    let cut = Cut::evaluate(g, side, "small-lambda").expect("vertex ids in range");
                    best = better(best, Some((index, cut)));
                }
                best
            },
        )
        .reduce(|| None, better);
    best.map(|(_, c)| c).ok_or(Error::NoCutFound)
}

pub fn big_lambda_small_cut(g: &Hypergraph, s: usize, seed: u64) -> Result<Cut> {
    big_lambda_small_cut_with(g, s, seed, REPETITIONS)
}

/// Kernel search over a doubling grid of sampling rates.
pub fn big_lambda_small_cut_with(g: &Hypergraph, s: usize, seed: u64, c: usize) -> Result<Cut> {
    let k = approximate_connectivity(g)?;
    if k == 0 {
        return Ok(Cut::component(g, "big-lambda").expect("disconnected"));
    }
    let n = g.n();
    let (r, sr) = rank_term(g, s);
    let log_n = log2_ceil(n).max(1) as u64;
    let t = (k as u64)
        .saturating_add(r)
        .saturating_add(300u64.saturating_mul(sr).saturating_mul(log_n));
    let top = log2_ceil(3usize.saturating_mul(sr as usize)) as u32;
    let grid: Vec<u64> = (0..=top.min(62)).map(|i| 1u64 << i).collect();
    let reps = c.max(1) * log_n as usize;
    let max_vertices = 9u64.saturating_mul(r).saturating_mul(sr);
    let log_p = log2_ceil(g.p()).max(1) as u64;
    let b = build_bipartite(g);
    let sources: Vec<usize> = (0..n).map(|v| b.vertex_node(v)).collect();
    let trials: Vec<(usize, u64)> = grid
        .iter()
        .enumerate()
        .flat_map(|(i, &ell)| (0..reps).map(move |rep| (i * reps + rep, ell)))
        .collect();
    let best = trials
        .into_par_iter()
        .map(|(index, ell)| {
            let mut rng = rng_from(derive_seed(seed, index as u64));
            let edge_guard = 64u64
                .saturating_mul(t)
                .saturating_mul(ell)
                .saturating_mul(log_p);
            let mut best = None;
            for kernel in find_kernels(&b, &sources, ell as usize, &mut rng) {
                if kernel.degenerate
                    || kernel.vertex_nodes(&b) as u64 > max_vertices
                    || kernel.graph.edge_count() as u64 > edge_guard
                {
                    continue;
                }
                let Ok(sep) = kernel_min_separator(&kernel) else {
                    continue;
                };
                let lifted = lift_separator(&b, &kernel, &sep);
                if let Ok(mut cut) = cut_from_separator(g, &b, &lifted) {
                    cut.source = "big-lambda".to_string();
                    best = better(best, Some((index, cut)));
                }
            }
            best
        })
        .reduce(|| None, better);
    best.map(|(_, c)| c).ok_or(Error::NoCutFound)
}

/// Connectivity estimate below which the local search is preferred.
pub fn dispatch_threshold(n: usize, rank: usize, s: usize) -> u64 {
    let r = rank.max(2) as u32;
    2700u64
        .saturating_mul(pow_saturating(s as u64, r))
        .saturating_mul(log2_ceil(n).max(1) as u64)
}

pub fn small_size_min_cut(g: &Hypergraph, s: usize, seed: u64) -> Result<Cut> {
    small_size_min_cut_with(g, s, seed, None)
}

/// Picks a branch by the connectivity estimate (or `force`), falling back to
/// the deterministic solver when the randomized search finds nothing.
pub fn small_size_min_cut_with(
    g: &Hypergraph,
    s: usize,
    seed: u64,
    force: Option<Branch>,
) -> Result<Cut> {
    if s == 0 {
        return Err(Error::BadS {
            s,
            limit: g.n() / 2,
        });
    }
    let k = approximate_connectivity(g)?;
    let branch = force.unwrap_or(if k as u64 <= dispatch_threshold(g.n(), g.rank(), s) {
        Branch::SmallLambda
    } else {
        Branch::BigLambda
    });
    let found = match branch {
        Branch::SmallLambda => small_lambda_small_cut(g, s, seed),
        Branch::BigLambda => big_lambda_small_cut(g, s, seed),
    };
    match found {
        Err(Error::NoCutFound) => {
            log::debug!("randomized small-cut search found nothing; solving directly");
            slow_min_cut(g)
        }
        other => other,
    }
}
