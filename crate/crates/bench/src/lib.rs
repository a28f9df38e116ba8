//! Named instance suites shared by the criterion benches and `hypercut bench`.

use hypercut::generators::{
    gen_complete_uniform, gen_nontrivial_example, gen_planted_small_cut, gen_random,
    gen_tight_example,
};
use hypercut::{Hypergraph, Result};

pub const SUITES: &[&str] = &["random", "planted", "pairs", "tight", "complete", "scaling"];

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Hypergraph,
}

fn named(name: String, graph: Hypergraph) -> Instance {
    Instance { name, graph }
}

/// Builds the instances of suite `name`; `None` for an unknown suite.
pub fn suite(name: &str) -> Option<Result<Vec<Instance>>> {
    let build = || -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        match name {
            "random" => {
                for n in [12, 16, 24, 32] {
                    for seed in 0..3 {
                        let g = gen_random(n, 3, 4 * n, seed)?;
                        out.push(named(format!("random_n{n}_s{seed}"), g));
                    }
                }
            }
            "planted" => {
                for (n, lam) in [(24, 2), (32, 3), (48, 3)] {
                    for seed in 0..3 {
                        let (g, _) = gen_planted_small_cut(n, 3, 2, lam, seed)?;
                        out.push(named(format!("planted_n{n}_l{lam}_s{seed}"), g));
                    }
                }
            }
            "pairs" => {
                for n in [100, 120] {
                    out.push(named(format!("pairs_n{n}"), gen_nontrivial_example(n)?));
                }
            }
            "tight" => {
                for (n, r) in [(36, 3), (64, 3), (49, 4)] {
                    out.push(named(format!("tight_n{n}_r{r}"), gen_tight_example(n, r)?));
                }
            }
            "complete" => {
                for (n, r) in [(12, 2), (17, 2), (10, 3), (12, 3)] {
                    out.push(named(
                        format!("complete_n{n}_r{r}"),
                        gen_complete_uniform(n, r)?,
                    ));
                }
            }
            "scaling" => {
                for n in [250, 500, 1000, 2000] {
                    out.push(named(format!("scaling_n{n}"), gen_random(n, 3, 4 * n, 11)?));
                }
            }
            _ => unreachable!(),
        }
        Ok(out)
    };
    SUITES.contains(&name).then(build)
}
