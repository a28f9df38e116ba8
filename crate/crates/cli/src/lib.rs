//! The `hypercut` command line. [`run_with`] holds everything so tests can
//! drive it without spawning a process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypercut::driver::{decomposition_phi, small_side_bound};
use hypercut::expander::hypergraph_expander_decomposition;
use hypercut::generators::{
    gen_complete_uniform, gen_nontrivial_example, gen_planted_small_cut, gen_random,
    gen_tight_example,
};
use hypercut::io::{read_hgr_with, write_hgr, write_result, ResultRecord};
use hypercut::oracle::brute_min_cut_with_limit;
use hypercut::smallcut::exhaustive::DEFAULT_LIMIT;
use hypercut::smallcut::{exhaustive_small_min_cut, exhaustive_small_min_cut_with_limit};
use hypercut::sparsify::approximate_connectivity;
use hypercut::{
    cx_min_cut, exp_decomp_min_cut, min_cut_with, slow_min_cut, small_size_min_cut,
    structural_report, BuildOptions, Cut, Hypergraph, MinCutOptions,
};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hypercut",
    version,
    about = "Minimum cuts of low-rank hypergraphs"
)]
struct Cli {
    /// Silently drop hyperedges with a single vertex instead of rejecting the file.
    #[arg(long, global = true)]
    drop_singletons: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance in .hgr format.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Compute a minimum cut.
    Mincut(MincutArgs),
    /// Cross-check every applicable solver against brute force.
    Verify(VerifyArgs),
    /// Expander decomposition as JSON.
    Decompose {
        file: PathBuf,
        /// Conductance target; defaults to the value used before trimming.
        #[arg(long)]
        phi: Option<f64>,
    },
    /// Exact min-cut structure of a small instance as JSON.
    Report { file: PathBuf },
    /// Time the solvers over a named instance suite.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Destination file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Distinct hyperedges with sizes uniform in [2, r].
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// A planted cut around vertices 1..=s of capacity lambda.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Vertex pairs joined through three hubs; connectivity 3n/2 − 3 with a two-vertex min-cut side.
    Pairs {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Blow-up of a complete r-uniform hypergraph on sqrt(n) blocks.
    Tight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complete r-uniform hypergraph.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Algo {
    Auto,
    Slow,
    Cx,
    Expdecomp,
    Small,
    Exhaustive,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Slow => "slow",
            Algo::Cx => "cx",
            Algo::Expdecomp => "expdecomp",
            Algo::Small => "small",
            Algo::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Args, Debug)]
struct MincutArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Side-size bound for `small` and `exhaustive`.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// With `auto`: run both large-connectivity branches regardless of the estimate.
    #[arg(long)]
    force_large_branch: bool,
    /// Print a JSON record instead of plain text.
    #[arg(long)]
    json: bool,
    /// Leave `wall_ms` empty so output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Largest n the brute-force oracle accepts.
    #[arg(long, default_value_t = 18)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where the first failing instance is written.
    #[arg(long, default_value = "hypercut-repro.hgr")]
    repro: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    out: Format,
    /// Comma-separated solver list.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "slow,cx,expdecomp,auto"
    )]
    algos: Vec<Algo>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Captured stdout and stderr of one command.
#[derive(Default)]
struct Streams {
    out: Vec<u8>,
    err: Vec<u8>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            return e.code();
        }
    };
    let mut streams = Streams::default();
    let result = pool.install(|| dispatch(cli, &mut streams));
    let _ = out.write_all(&streams.out);
    let _ = err.write_all(&streams.err);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("HYPERCUT_THREADS") {
        let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            usage(format!(
                "HYPERCUT_THREADS must be a positive integer, got `{raw}`"
            ))
        })?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(usage)
}

fn dispatch(cli: Cli, io: &mut Streams) -> CliResult<()> {
    let opts = BuildOptions {
        drop_singletons: cli.drop_singletons,
        ..BuildOptions::default()
    };
    match cli.command {
        Command::Gen { family } => generate(family, io),
        Command::Mincut(args) => mincut(&load(&args.file, opts)?, &args, io),
        Command::Verify(args) => verify(&args, opts, io),
        Command::Decompose { file, phi } => {
            let g = load(&file, opts)?;
            let phi = phi.unwrap_or_else(|| decomposition_phi(g.rank(), g.min_degree()));
            let d = hypergraph_expander_decomposition(&g, phi).map_err(usage)?;
            emit_json(io, &d)
        }
        Command::Report { file } => {
            let report = structural_report(&load(&file, opts)?).map_err(usage)?;
            emit_json(io, &report)
        }
        Command::Bench(args) => bench(&args, io),
    }
}

fn emit_json<T: Serialize>(io: &mut Streams, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    writeln!(io.out, "{text}").map_err(usage)
}

fn load(path: &Path, opts: BuildOptions) -> CliResult<Hypergraph> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    read_hgr_with(BufReader::new(file), opts)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn generate(family: Family, io: &mut Streams) -> CliResult<()> {
    let (text, out) = match family {
        Family::Random { n, r, m, seed, out } => {
            (write_hgr(&gen_random(n, r, m, seed).map_err(usage)?), out)
        }
        Family::Planted {
            n,
            r,
            s,
            lambda,
            seed,
            out,
        } => {
            let (g, side) = gen_planted_small_cut(n, r, s, lambda, seed).map_err(usage)?;
            let ids: Vec<String> = side.iter().map(|v| (v + 1).to_string()).collect();
            (
                format!("% planted side: {}\n{}", ids.join(" "), write_hgr(&g)),
                out,
            )
        }
        Family::Pairs { n, out } => (write_hgr(&gen_nontrivial_example(n).map_err(usage)?), out),
        Family::Tight { n, r, out } => (write_hgr(&gen_tight_example(n, r).map_err(usage)?), out),
        Family::Complete { n, r, out } => {
            (write_hgr(&gen_complete_uniform(n, r).map_err(usage)?), out)
        }
    };
    match out.output {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => io.out.write_all(text.as_bytes()).map_err(usage),
    }
}

/// One solver run with its reported parameters and seed.
fn solve(
    g: &Hypergraph,
    algo: Algo,
    s: Option<usize>,
    seed: u64,
    force: bool,
) -> CliResult<(Cut, BTreeMap<String, serde_json::Value>, Option<u64>)> {
    let mut params = BTreeMap::new();
    if force && algo != Algo::Auto {
        return Err(usage("--force-large-branch only applies to --algo auto"));
    }
    if s.is_some() && !matches!(algo, Algo::Small | Algo::Exhaustive) {
        return Err(usage(
            "--s only applies to --algo small and --algo exhaustive",
        ));
    }
    let mut used_seed = None;
    let cut = match algo {
        Algo::Auto => {
            params.insert("force_large_branch".to_string(), force.into());
            used_seed = Some(seed);
            min_cut_with(
                g,
                seed,
                MinCutOptions {
                    force_large_branch: force,
                },
            )
        }
        Algo::Slow => slow_min_cut(g),
        Algo::Cx => cx_min_cut(g),
        Algo::Expdecomp => exp_decomp_min_cut(g),
        Algo::Small => {
            let s = match s {
                Some(s) => s,
                None => {
                    small_side_bound(g.n(), g.rank(), approximate_connectivity(g).map_err(usage)?)
                }
            };
            params.insert("s".to_string(), s.into());
            used_seed = Some(seed);
            small_size_min_cut(g, s, seed)
        }
        Algo::Exhaustive => {
            let s = s.unwrap_or((g.n() / 2).clamp(1, DEFAULT_LIMIT));
            params.insert("s".to_string(), s.into());
            exhaustive_small_min_cut(g, s)
        }
    }
    .map_err(usage)?;
    Ok((cut, params, used_seed))
}

fn mincut(g: &Hypergraph, args: &MincutArgs, io: &mut Streams) -> CliResult<()> {
    let start = Instant::now();
    let (cut, params, seed) = solve(g, args.algo, args.s, args.seed, args.force_large_branch)?;
    let wall_ms = (!args.no_timing).then(|| start.elapsed().as_millis() as u64);
    if args.json {
        let record = ResultRecord {
            algorithm: args.algo.name().to_string(),
            lambda: cut.capacity,
            params,
            seed,
            side: cut.side,
            wall_ms,
        };
        writeln!(io.out, "{}", write_result(&record)).map_err(usage)
    } else {
        let ids: Vec<String> = cut.side.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(io.out, "lambda {}\nside {}", cut.capacity, ids.join(" ")).map_err(usage)?;
        if let Some(ms) = wall_ms {
            writeln!(io.err, "{} took {ms} ms", args.algo.name()).map_err(usage)?;
        }
        Ok(())
    }
}

/// Solver name and capacity for every solver that applies to `g`.
fn all_solvers(g: &Hypergraph, seed: u64) -> SolverRuns {
    let half = (g.n() / 2).max(1);
    let mut runs: Vec<(String, hypercut::Result<Cut>)> = vec![
        ("slow".to_string(), slow_min_cut(g)),
        ("cx".to_string(), cx_min_cut(g)),
        ("expdecomp".to_string(), exp_decomp_min_cut(g)),
        (
            "auto".to_string(),
            min_cut_with(g, seed, MinCutOptions::default()),
        ),
        (
            "auto-forced".to_string(),
            min_cut_with(
                g,
                seed,
                MinCutOptions {
                    force_large_branch: true,
                },
            ),
        ),
        (
            format!("small(s={half})"),
            small_size_min_cut(g, half, seed),
        ),
    ];
    runs.push((
        format!("exhaustive(s={half})"),
        exhaustive_small_min_cut_with_limit(g, half, half),
    ));
    runs.into_iter()
        .map(|(name, r)| (name, r.map(|c| c.capacity).map_err(|e| e.to_string())))
        .collect()
}

fn verify(args: &VerifyArgs, opts: BuildOptions, io: &mut Streams) -> CliResult<()> {
    let graphs = args
        .files
        .iter()
        .map(|f| load(f, opts))
        .collect::<CliResult<Vec<_>>>()?;
    if let Some((f, g)) = args
        .files
        .iter()
        .zip(&graphs)
        .find(|(_, g)| g.n() > args.max_n || g.n() < 2)
    {
        return Err(usage(format!(
            "{}: n = {} is outside the oracle range [2, {}]",
            f.display(),
            g.n(),
            args.max_n
        )));
    }
    let outcomes: Vec<_> = graphs
        .par_iter()
        .map(|g| {
            let (lambda, _) = brute_min_cut_with_limit(g, args.max_n).expect("size checked above");
            (lambda, all_solvers(g, args.seed))
        })
        .collect();
    judge(&args.files, &graphs, &outcomes, &args.repro, io)
}

type SolverRuns = Vec<(String, std::result::Result<usize, String>)>;

/// Prints one line per instance and writes the first disagreement to `repro`.
fn judge(
    files: &[PathBuf],
    graphs: &[Hypergraph],
    outcomes: &[(usize, SolverRuns)],
    repro: &Path,
    io: &mut Streams,
) -> CliResult<()> {
    let mut first_failure = None;
    for ((file, g), (lambda, runs)) in files.iter().zip(graphs).zip(outcomes) {
        let bad: Vec<String> = runs
            .iter()
            .filter(|(_, r)| r.as_ref() != Ok(lambda))
            .map(|(name, r)| match r {
                Ok(c) => format!("{name}={c}"),
                Err(e) => format!("{name} failed: {e}"),
            })
            .collect();
        if bad.is_empty() {
            writeln!(
                io.out,
                "{}: ok, lambda {lambda}, {} solvers agree",
                file.display(),
                runs.len()
            )
            .map_err(usage)?;
        } else {
            writeln!(
                io.out,
                "{}: MISMATCH, oracle lambda {lambda}; {}",
                file.display(),
                bad.join(", ")
            )
            .map_err(usage)?;
            first_failure.get_or_insert((file, g, *lambda, bad));
        }
    }
    match first_failure {
        None => Ok(()),
        Some((file, g, lambda, bad)) => {
            let text = format!(
                "% from {}\n% oracle lambda {lambda}; {}\n{}",
                file.display(),
                bad.join(", "),
                write_hgr(g)
            );
            std::fs::write(repro, text).map_err(|e| usage(format!("{}: {e}", repro.display())))?;
            Err(CliError::Mismatch(format!(
                "solvers disagree with the oracle; instance written to {}",
                repro.display()
            )))
        }
    }
}

#[derive(Serialize)]
struct BenchRow<'a> {
    suite: &'a str,
    instance: &'a str,
    n: usize,
    m: usize,
    p: usize,
    rank: usize,
    algorithm: &'static str,
    lambda: usize,
    wall_ms: Option<f64>,
}

fn bench(args: &BenchArgs, io: &mut Streams) -> CliResult<()> {
    let instances = hypercut_bench::suite(&args.suite)
        .ok_or_else(|| {
            usage(format!(
                "unknown suite `{}`; expected one of {}",
                args.suite,
                hypercut_bench::SUITES.join(", ")
            ))
        })?
        .map_err(usage)?;
    let results: Vec<Vec<(Algo, usize, f64)>> = instances
        .par_iter()
        .map(|inst| {
            args.algos
                .iter()
                .map(|&algo| {
                    let start = Instant::now();
                    let (cut, _, _) = solve(&inst.graph, algo, None, args.seed, false)?;
                    Ok((
                        algo,
                        cut.capacity,
                        (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
                    ))
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let Format::Csv = args.out;
    let mut writer = csv::Writer::from_writer(&mut io.out);
    for (inst, runs) in instances.iter().zip(&results) {
        let g = &inst.graph;
        for &(algo, lambda, ms) in runs {
            writer
                .serialize(BenchRow {
                    suite: &args.suite,
                    instance: &inst.name,
                    n: g.n(),
                    m: g.m(),
                    p: g.p(),
                    rank: g.rank(),
                    algorithm: algo.name(),
                    lambda,
                    wall_ms: (!args.no_timing).then_some(ms),
                })
                .map_err(usage)?;
        }
    }
    writer.flush().map_err(usage)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disagreement_writes_repro() {
        let dir = std::env::temp_dir().join(format!("hypercut-judge-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let repro = dir.join("repro.hgr");
        let g = Hypergraph::build(3, vec![vec![0, 1], vec![1, 2]], false).unwrap();
        let files = vec![PathBuf::from("a.hgr"), PathBuf::from("b.hgr")];
        let good: SolverRuns = vec![("slow".to_string(), Ok(1))];
        let bad: SolverRuns = vec![("slow".to_string(), Ok(1)), ("cx".to_string(), Ok(2))];
        let mut io = Streams::default();
        let err = judge(
            &files,
            &[g.clone(), g.clone()],
            &[(1, good), (1, bad)],
            &repro,
            &mut io,
        )
        .unwrap_err();
        assert_eq!(err.code(), EXIT_MISMATCH);
        let text = String::from_utf8(io.out).unwrap();
        assert!(
            text.contains("a.hgr: ok") && text.contains("b.hgr: MISMATCH"),
            "{text}"
        );
        let written = std::fs::read_to_string(&repro).unwrap();
        assert!(written.contains("cx=2"));
        assert_eq!(hypercut::io::read_hgr(written.as_bytes()).unwrap(), g);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
