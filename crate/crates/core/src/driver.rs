//! Composite min-cut solvers and the structural report.

use serde::Serialize;

use crate::error::Result;
use crate::expander::hypergraph_expander_decomposition;
use crate::hypergraph::{contract, Cut, Hypergraph};
use crate::oracle::{brute_min_cut, min_cut_union};
use crate::ordering::slow_min_cut;
use crate::seed::derive_seed;
use crate::smallcut::small_size_min_cut;
use crate::sparsify::{approximate_connectivity, certificate};
use crate::trimshave::{shave_k, trim};

/// Sparsify to a certificate, then solve exactly on it.
pub fn cx_min_cut(g: &Hypergraph) -> Result<Cut> {
    let k = approximate_connectivity(g)?;
    if k == 0 {
        return Ok(Cut::component(g, "cx").expect("disconnected"));
    }
    let sparse = certificate(g, k)?;
    let cut = slow_min_cut(&sparse)?;
    Cut::evaluate(g, cut.side, "cx")
}

/// Conductance parameter used before trimming: `min((6r²/δ)^{1/(r−1)}, 1/(r−1))`.
pub fn decomposition_phi(rank: usize, min_degree: usize) -> f64 {
    let r = rank.max(2) as f64;
    let cap = 1.0 / (r - 1.0);
    if min_degree == 0 {
        return cap;
    }
    (6.0 * r * r / min_degree as f64)
        .powf(1.0 / (r - 1.0))
        .min(cap)
}

/// Decompose, trim, shave `3r²` times, contract the surviving blocks and
/// solve the contraction. The decomposition is seeded from the instance, so
/// the result is deterministic.
pub fn exp_decomp_min_cut(g: &Hypergraph) -> Result<Cut> {
    let k = approximate_connectivity(g)?;
    if k == 0 {
        return Ok(Cut::component(g, "expdecomp").expect("disconnected"));
    }
    let sparse = certificate(g, k)?;
    let r = sparse.rank().max(2);
    let phi = decomposition_phi(r, sparse.min_degree());
    let decomposition = hypergraph_expander_decomposition(&sparse, phi)?;
    let trimmed = trim(&sparse, &decomposition.partition)?;
    let shaved = shave_k(&sparse, &trimmed, 3 * r * r)?;
    let (small, map) = contract(&sparse, &shaved)?;
    let inner = if small.n() < 2 {
        log::debug!("contraction left a single vertex; solving the certificate directly");
        cx_min_cut(&sparse)?.side
    } else {
        let cut = cx_min_cut(&small)?;
        let mut inside = vec![false; small.n()];
        for &v in &cut.side {
            inside[v] = true;
        }
        (0..g.n()).filter(|&v| inside[map[v]]).collect()
    };
    Cut::evaluate(g, inner, "expdecomp")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinCutOptions {
    /// Skip the low-connectivity shortcut and run both branches.
    pub force_large_branch: bool,
}

/// Connectivity estimate at or below which [`min_cut`] solves directly: `3r(4r²)^r`.
pub fn large_branch_threshold(rank: usize) -> u64 {
    let r = rank.max(2) as u64;
    let base = 4u64.saturating_mul(r).saturating_mul(r);
    (3 * r).saturating_mul(base.checked_pow(r as u32).unwrap_or(u64::MAX))
}

/// Side-size bound handed to the small-side solver: `⌊r − log₂(k/12r)/log₂ n⌋` clamped to `[1, n/2]`.
pub fn small_side_bound(n: usize, rank: usize, k: usize) -> usize {
    let r = rank.max(2) as f64;
    let raw = r - (k as f64 / (12.0 * r)).log2() / (n as f64).log2();
    let hi = (n / 2).max(1);
    if raw.is_nan() {
        return 1;
    }
    (raw.floor().max(1.0) as usize).min(hi)
}

pub fn min_cut(g: &Hypergraph, seed: u64) -> Result<Cut> {
    min_cut_with(g, seed, MinCutOptions::default())
}

pub fn min_cut_with(g: &Hypergraph, seed: u64, opts: MinCutOptions) -> Result<Cut> {
    let k = approximate_connectivity(g)?;
    if k == 0 {
        return Ok(Cut::component(g, "auto").expect("disconnected"));
    }
    if !opts.force_large_branch && k as u64 <= large_branch_threshold(g.rank()) {
        return Cut::evaluate(g, cx_min_cut(g)?.side, "auto");
    }
    let sparse = certificate(g, k)?;
    let s = small_side_bound(g.n(), g.rank(), k);
    let (c1, c2) = rayon::join(
        || small_size_min_cut(&sparse, s, derive_seed(seed, 1)),
        || exp_decomp_min_cut(&sparse),
    );
    let c1 = Cut::evaluate(g, c1?.side, "auto")?;
    let c2 = Cut::evaluate(g, c2?.side, "auto")?;
    Ok(if c2.capacity < c1.capacity { c2 } else { c1 })
}

/// Exact measurements of the min-cut structure of a small hypergraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralReport {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub lambda: usize,
    pub min_cut_count: usize,
    /// Smaller-side size of every min-cut, ascending.
    pub min_cut_sizes: Vec<usize>,
    pub union_size: usize,
    /// `r − log₂(λ/4r)/log₂ n`; absent when `λ = 0`.
    pub size_bound: Option<f64>,
    /// Some min-cut has size at most `size_bound`.
    pub size_bound_met: Option<bool>,
    pub union_ratio: f64,
    /// `λ^{−1/(r−1)}`, the predicted shape of `union_ratio`.
    pub union_shape: Option<f64>,
    /// `(λ/2)^{1/r}`.
    pub gap_upper: Option<f64>,
    /// Only when `λ ≥ r·2^{r+1}`: no min-cut size lies strictly between
    /// `size_bound` and `gap_upper`.
    pub gap_holds: Option<bool>,
}

pub fn structural_report(g: &Hypergraph) -> Result<StructuralReport> {
    let (lambda, sides) = brute_min_cut(g)?;
    let union = min_cut_union(g)?;
    let n = g.n();
    let r = g.rank().max(2);
    let mut sizes: Vec<usize> = sides.iter().map(|s| s.len().min(n - s.len())).collect();
    sizes.sort_unstable();
    let (size_bound, union_shape, gap_upper) = if lambda == 0 {
        (None, None, None)
    } else {
        let l = lambda as f64;
        let rf = r as f64;
        (
            Some(rf - (l / (4.0 * rf)).log2() / (n as f64).log2()),
            Some(l.powf(-1.0 / (rf - 1.0))),
            Some((l / 2.0).powf(1.0 / rf)),
        )
    };
    let size_bound_met = size_bound.map(|b| sizes.iter().any(|&s| s as f64 <= b + 1e-9));
    let gap_holds = match (size_bound, gap_upper) {
        (Some(lo), Some(hi)) if lambda >= r << (r + 1) => Some(
            !sizes
                .iter()
                .any(|&s| (s as f64) > lo + 1e-9 && (s as f64) < hi - 1e-9),
        ),
        _ => None,
    };
    Ok(StructuralReport {
        n,
        m: g.m(),
        rank: g.rank(),
        lambda,
        min_cut_count: sides.len(),
        min_cut_sizes: sizes,
        union_size: union.len(),
        size_bound,
        size_bound_met,
        union_ratio: if g.m() == 0 {
            0.0
        } else {
            union.len() as f64 / g.m() as f64
        },
        union_shape,
        gap_upper,
        gap_holds,
    })
}
