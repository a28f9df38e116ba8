use std::path::{Path, PathBuf};

use hypercut_cli::{run_with, EXIT_INPUT, EXIT_USAGE};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("hypercut")
        .chain(args.iter().copied())
        .collect();
    let code = run_with(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn pair_fixture_has_lambda_147() {
    let r = run(&[
        "mincut",
        p(&fixture("pairs_n100.hgr")),
        "--algo",
        "cx",
        "--json",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["lambda"], 147);
    assert_eq!(v["algorithm"], "cx");
    assert_eq!(v["side"].as_array().unwrap().len(), 2);
    assert!(v["wall_ms"].is_u64());
}

#[test]
fn every_algorithm_agrees_on_a_small_file() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("g.hgr");
    assert_eq!(
        run(&[
            "gen",
            "random",
            "--n",
            "10",
            "--r",
            "3",
            "--m",
            "25",
            "--seed",
            "4",
            "-o",
            p(&file)
        ])
        .code,
        0
    );
    let mut lambdas = Vec::new();
    for algo in ["auto", "slow", "cx", "expdecomp", "small", "exhaustive"] {
        let r = run(&["mincut", p(&file), "--algo", algo, "--json", "--no-timing"]);
        assert_eq!(r.code, 0, "{algo}: {}", r.err);
        lambdas.push(json(&r.out)["lambda"].as_u64().unwrap());
    }
    assert!(lambdas.windows(2).all(|w| w[0] == w[1]), "{lambdas:?}");
    let forced = run(&[
        "mincut",
        p(&file),
        "--force-large-branch",
        "--seed",
        "9",
        "--json",
        "--no-timing",
    ]);
    let v = json(&forced.out);
    assert_eq!(v["lambda"].as_u64().unwrap(), lambdas[0]);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["params"]["force_large_branch"], true);
}

#[test]
fn json_output_is_byte_identical() {
    let file = fixture("pairs_n100.hgr");
    let dir = TempDir::new().unwrap();
    let small = write(&dir, "s.hgr", "6 5\n1 2\n2 3 4\n3 4 5\n1 5\n2 5\n1 3 4\n");
    for (path, algo) in [(p(&file), "auto"), (small.as_str(), "small")] {
        let args = [
            "mincut",
            path,
            "--algo",
            algo,
            "--seed",
            "17",
            "--json",
            "--no-timing",
        ];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.code, 0, "{}", a.err);
        assert_eq!(a.out, b.out);
    }
}

#[test]
fn plain_output_uses_file_ids() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "path.hgr", "% a path\n2 3\n1 2\n2 3\n");
    let r = run(&["mincut", &file, "--algo", "slow"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("lambda 1\nside "), "{}", r.out);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(run(&["mincut", "missing.file"]).code, EXIT_INPUT);
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.hgr", "2 3\n1 2\n1 x\n");
    let r = run(&["mincut", &bad]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 3"), "{}", r.err);
    let short = write(&dir, "short.hgr", "3 3\n1 2\n");
    assert_eq!(run(&["report", &short]).code, EXIT_INPUT);
}

#[test]
fn singletons_need_a_flag() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "single.hgr", "3 3\n1 2\n2\n2 3\n");
    assert_eq!(run(&["mincut", &file]).code, EXIT_INPUT);
    let r = run(&[
        "mincut",
        &file,
        "--drop-singletons",
        "--json",
        "--no-timing",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(json(&r.out)["lambda"], 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["mincut", "x.hgr", "--algo", "nope"]).code, EXIT_USAGE);
    assert_eq!(run(&["bench", "--suite", "nope"]).code, EXIT_USAGE);
    let file = fixture("pairs_n100.hgr");
    assert_eq!(
        run(&["mincut", p(&file), "--algo", "slow", "--force-large-branch"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["mincut", p(&file), "--algo", "exhaustive", "--s", "9"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["verify", p(&file)]).code, EXIT_USAGE);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("mincut"));
}

#[test]
fn verify_agrees_on_random_instances() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for seed in 0..6 {
        let file = dir.path().join(format!("g{seed}.hgr"));
        let r = run(&[
            "gen",
            "random",
            "--n",
            "9",
            "--r",
            "4",
            "--m",
            "22",
            "--seed",
            &seed.to_string(),
            "-o",
            p(&file),
        ]);
        assert_eq!(r.code, 0, "{}", r.err);
        files.push(file);
    }
    let repro = dir.path().join("repro.hgr");
    let mut args = vec!["verify", "--repro", p(&repro)];
    args.extend(files.iter().map(|f| p(f)));
    let r = run(&args);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert_eq!(r.out.lines().filter(|l| l.contains(": ok")).count(), 6);
    assert!(!repro.exists());
}

#[test]
fn generators_write_parseable_files() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str], u64); 4] = [
        (
            "planted",
            &[
                "--n", "12", "--r", "3", "--s", "2", "--lambda", "2", "--seed", "1",
            ],
            2,
        ),
        ("pairs", &["--n", "100"], 147),
        ("tight", &["--n", "16", "--r", "3"], 3),
        ("complete", &["--n", "6", "--r", "2"], 5),
    ];
    for (family, extra, lambda) in cases {
        let file = dir.path().join(format!("{family}.hgr"));
        let mut args = vec!["gen", family];
        args.extend_from_slice(extra);
        args.extend(["-o", p(&file)]);
        let r = run(&args);
        assert_eq!(r.code, 0, "{family}: {}", r.err);
        let r = run(&[
            "mincut",
            p(&file),
            "--algo",
            "slow",
            "--json",
            "--no-timing",
        ]);
        assert_eq!(r.code, 0, "{family}: {}", r.err);
        assert_eq!(json(&r.out)["lambda"], lambda, "{family}");
    }
    let a = run(&[
        "gen", "random", "--n", "7", "--r", "3", "--m", "9", "--seed", "5",
    ]);
    let b = run(&[
        "gen", "random", "--n", "7", "--r", "3", "--m", "9", "--seed", "5",
    ]);
    assert_eq!(a.out, b.out);
    assert_eq!(
        run(&["gen", "tight", "--n", "15", "--r", "3"]).code,
        EXIT_USAGE
    );
}

#[test]
fn decompose_and_report_emit_json() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("k.hgr");
    run(&["gen", "complete", "--n", "17", "--r", "2", "-o", p(&file)]);
    let r = run(&["report", p(&file)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["lambda"], 16);
    assert_eq!(v["gap_holds"], true);
    let r = run(&["decompose", p(&file), "--phi", "0.2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["phi"], 0.2);
    assert_eq!(v["partition"]["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["crossing_edges"], 0);
    assert_eq!(run(&["decompose", p(&file), "--phi", "3"]).code, EXIT_USAGE);
}

#[test]
fn bench_writes_csv() {
    let r = run(&[
        "bench",
        "--suite",
        "complete",
        "--out",
        "csv",
        "--algos",
        "slow,cx",
        "--no-timing",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let mut reader = csv::Reader::from_reader(r.out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "suite");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0][7], pair[1][7]);
        assert_eq!(&pair[0][8], "");
    }
}

#[test]
fn thread_count_comes_from_the_environment() {
    std::env::set_var("HYPERCUT_THREADS", "0");
    let bad = run(&["bench", "--suite", "complete", "--algos", "slow"]);
    std::env::set_var("HYPERCUT_THREADS", "2");
    let good = run(&[
        "bench",
        "--suite",
        "complete",
        "--algos",
        "slow",
        "--no-timing",
    ]);
    std::env::remove_var("HYPERCUT_THREADS");
    assert_eq!(bad.code, EXIT_USAGE);
    assert_eq!(good.code, 0, "{}", good.err);
}
