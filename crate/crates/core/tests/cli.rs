use std::io::{Read, Write};
use std::path::Path;
use std::process::{Command, Output, Stdio};

use spacefill::bench::BenchReport;
use spacefill::metrics::DEFAULT_P;
use spacefill::cli::{subset_from_reader, SubsetRequest};
use spacefill::io::read_csv;
use spacefill::samplers::has_latin_property;
use spacefill::{quality_report, Domain};

const BIN: &str = env!("CARGO_BIN_EXE_spacefill");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SPACEFILL_SEED")
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("SPACEFILL_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The command may exit before reading its input.
    let _ = child.stdin.take().unwrap().write_all(input);
    child.wait_with_output().unwrap()
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const ALL: &[(&str, &[&str])] = &[
    ("random", &[]),
    ("grid", &["bins=[5,6]"]),
    ("lhs-basic", &[]),
    ("lhs-maximin", &["n_interchanges=200"]),
    ("cvt", &["ppi=2000", "niter=20"]),
    ("poisson", &["radius=0.15"]),
    ("greedy-fp", &[]),
    ("bc", &["ncand=50"]),
    ("hybrid", &[]),
];

fn generate_args<'a>(algo: &'a str, params: &[&'a str], seed: &'a str) -> Vec<&'a str> {
    let mut a = vec!["generate", "--algo", algo, "--dim", "2", "--n", "30", "--seed", seed];
    if !params.is_empty() {
        a.push("--params");
        a.extend_from_slice(params);
    }
    a
}

#[test]
fn lhs_basic_output_is_latin() {
    let text = ok(&run(&["generate", "--algo", "lhs-basic", "--dim", "2", "--n", "4", "--seed", "7"]));
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().next(), Some("x0,x1"));
    assert!(has_latin_property(&read_csv(text.as_bytes(), None).unwrap()));
}

#[test]
fn bc_example_in_unit_square() {
    let text = ok(&run(&[
        "generate", "--algo", "bc", "--dim", "2", "--n", "500", "--seed", "1", "--params", "ncand=250",
    ]));
    let set = read_csv(text.as_bytes(), None).unwrap();
    assert_eq!(set.len(), 500);
}

#[test]
fn generate_pipes_into_score_and_plot() {
    for (algo, params) in ALL {
        let csv = ok(&run(&generate_args(algo, params, "11")));
        let score = ok(&run_stdin(&["score"], csv.as_bytes()));
        let v: serde_json::Value = serde_json::from_str(&score).unwrap();
        for k in ["nnMin", "nnAvg", "nnMax", "phiP", "cl2", "n", "d"] {
            assert!(v.get(k).is_some(), "{algo}: {k}");
        }
        let svg = ok(&run_stdin(&["plot"], csv.as_bytes()));
        assert_eq!(svg.matches("<circle").count(), csv.lines().count() - 1, "{algo}");
    }
}

#[test]
fn seed_from_environment() {
    let args = ["generate", "--algo", "random", "--dim", "3", "--n", "5"];
    let missing = run(&args);
    assert_eq!(missing.status.code(), Some(2));
    let env = Command::new(BIN).args(args).env("SPACEFILL_SEED", "99").output().unwrap();
    let flag = run(&[&args[..], &["--seed", "99"]].concat());
    assert_eq!(ok(&env), ok(&flag));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["generate", "--algo", "nope", "--dim", "2", "--n", "5", "--seed", "1"],
        vec!["generate", "--algo", "greedy-fp", "--dim", "2", "--n", "5", "--seed", "1", "--params", "scael=3"],
        vec!["generate", "--algo", "random", "--dim", "2", "--n", "5", "--seed", "1", "--density", "bumpy"],
        vec!["generate", "--algo", "lhs-basic", "--dim", "2", "--n", "5", "--seed", "1", "--viability", "parabola-above"],
        vec!["generate", "--bogus-flag"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sampler_failure_exits_one() {
    // The centred density has negligible mass in 30 dimensions, so
    // rejection sampling gives up.
    let out = run(&["generate", "--algo", "random", "--dim", "30", "--n", "1", "--seed", "1", "--density", "gauss-center"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn score_reports_lines_and_pairs() {
    let three = ok(&run_stdin(&["score"], b"x0\n0\n0.4\n1.0\n"));
    let v: serde_json::Value = serde_json::from_str(&three).unwrap();
    assert!((v["nnAvg"].as_f64().unwrap() - 0.466_67).abs() < 1e-4);
    for (input, needle) in [
        (&b"x0,x1\n0.1,0.2\n0.3\n"[..], "line 3"),
        (&b"x0,x1\n0.1,0.2\n0.3,zz\n"[..], "line 3"),
        (&b"x0,x1\n0.1,0.2\n0.3,0.4\n1.2,0.5\n"[..], "line 4"),
        (&b"x0,x1\n0.1,0.2\n0.5,0.5\n0.1,0.2\n"[..], "0 and 2"),
    ] {
        let out = run_stdin(&["score"], input);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"schemaVersion":1,"algorithm":"bc","dim":3,"n":40,"seed":5,
            "domain":{"lower":[-1,0,0],"upper":[1,2,1]},"params":{"ncand":30},"latinize":true}"#,
    )
    .unwrap();
    let from_cfg = ok(&run(&["generate", "--config", cfg.to_str().unwrap()]));
    let from_flags = ok(&run(&[
        "generate", "--algo", "bc", "--dim", "3", "--n", "40", "--seed", "5", "--lower", "-1,0,0", "--upper",
        "1,2,1", "--params", "ncand=30", "--latinize",
    ]));
    assert_eq!(from_cfg, from_flags);
    std::fs::write(&cfg, r#"{"algorithm":"bc","dim":3,"n":40,"seed":5,"extra":1}"#).unwrap();
    assert_eq!(run(&["generate", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn latinize_keeps_latin_file() {
    let csv = ok(&run(&["generate", "--algo", "lhs-maximin", "--dim", "3", "--n", "25", "--seed", "2"]));
    let again = ok(&run_stdin(&["latinize", "--seed", "8"], csv.as_bytes()));
    assert_eq!(csv, again);
    let rnd = ok(&run(&["generate", "--algo", "random", "--dim", "3", "--n", "25", "--seed", "2"]));
    let lat = ok(&run_stdin(&["latinize", "--seed", "8"], rnd.as_bytes()));
    assert!(has_latin_property(&read_csv(lat.as_bytes(), None).unwrap()));
}

#[test]
fn expand_shrink_drops_out_of_box_rows() {
    let csv = ok(&run(&["generate", "--algo", "random", "--dim", "2", "--n", "200", "--seed", "4"]));
    let out = ok(&run_stdin(
        &["expand", "--new-lower", "0.2,0", "--new-upper", "0.7,0.5", "--add", "10", "--seed", "1"],
        csv.as_bytes(),
    ));
    let want: Vec<&str> = csv
        .lines()
        .skip(1)
        .filter(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (0.2..=0.7).contains(&v[0]) && (0.0..=0.5).contains(&v[1])
        })
        .collect();
    assert_eq!(out.lines().skip(1).collect::<Vec<_>>(), want);
}

#[test]
fn expand_grow_keeps_prefix() {
    let csv = ok(&run(&["generate", "--algo", "greedy-fp", "--dim", "2", "--n", "50", "--seed", "4"]));
    let out = ok(&run_stdin(
        &["expand", "--new-lower", "0,0", "--new-upper", "2,1", "--add", "20", "--seed", "1"],
        csv.as_bytes(),
    ));
    assert!(out.lines().take(51).eq(csv.lines()));
    assert_eq!(out.lines().count(), 71);
    for l in out.lines().skip(51) {
        let x: f64 = l.split(',').next().unwrap().parse().unwrap();
        assert!(x > 1.0, "{l}");
    }
}

#[test]
fn append_region_prefix_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let anchors = dir.path().join("a.csv");
    std::fs::write(&anchors, "x0,x1\n0.2,0.3\n0.5,0.5\n0.8,0.6\n").unwrap();
    let out = ok(&run(&[
        "append-region", "--anchors", anchors.to_str().unwrap(), "--n", "12", "--halfwidth", "0.05",
        "--cands-per-anchor", "20", "--seed", "3",
    ]));
    assert_eq!(out.lines().count(), 16);
    assert_eq!(out.lines().skip(1).take(3).collect::<Vec<_>>(), [
            "0.20000000000000001,0.29999999999999999",
            "0.5,0.5",
            "0.80000000000000004,0.59999999999999998"
        ]);
}

#[test]
fn plot_split_and_projection() {
    let csv = ok(&run(&["generate", "--algo", "random", "--dim", "4", "--n", "100", "--seed", "1"]));
    let svg = ok(&run_stdin(&["plot", "--dims", "0,3", "--split", "50"], csv.as_bytes()));
    assert_eq!(svg.matches("<circle").count(), 100);
    assert_eq!(svg.matches("#1f77b4").count(), 50);
    assert_eq!(svg.matches("#d62728").count(), 50);
    assert!(svg.contains(">x3<"));
    assert_eq!(run_stdin(&["plot", "--dims", "0,4"], csv.as_bytes()).status.code(), Some(2));
    assert_eq!(run_stdin(&["plot", "--dims", "2,2"], csv.as_bytes()).status.code(), Some(2));
}

/// Reader that records every byte range handed out.
struct Counting<R> {
    inner: R,
    bytes: usize,
    calls_after_eof: usize,
    eof: bool,
}

impl<R: Read> Read for Counting<R> {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        let n = self.inner.read(buf)?;
        if self.eof {
            self.calls_after_eof += 1;
        }
        self.eof |= n == 0;
        self.bytes += n;
        Ok(n)
    }
}

#[test]
fn subset_reads_input_once() {
    let csv = ok(&run(&["generate", "--algo", "random", "--dim", "2", "--n", "30000", "--seed", "9"]));
    let mut reader = Counting {
        inner: csv.as_bytes(),
        bytes: 0,
        calls_after_eof: 0,
        eof: false,
    };
    let req = SubsetRequest {
        n: 100,
        segment: 10_000,
        total: None,
        seed: 3,
        bounds: None,
    };
    let sel = subset_from_reader(&mut reader, Some(csv.len() as u64), &req).unwrap();
    assert_eq!(sel.set.len(), 100);
    assert_eq!(reader.bytes, csv.len());
    assert!(reader.calls_after_eof <= 1);

    // The command gives the same rows as the library call.
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.csv");
    std::fs::write(&big, &csv).unwrap();
    let out = ok(&run(&["subset", "--in", big.to_str().unwrap(), "--n", "100", "--segment", "10000", "--seed", "3"]));
    assert_eq!(read_csv(out.as_bytes(), None).unwrap(), sel.set);
    // Without a size the quota cannot be computed.
    assert_eq!(run_stdin(&["subset", "--n", "5", "--segment", "10", "--seed", "1"], csv.as_bytes()).status.code(), Some(2));
}

fn files_in(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn bench_paper_suite_writes_four_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&run(&["bench", "--suite", "paper", "--reps-override", "1", "--out", dir.path().to_str().unwrap()]));
    assert_eq!(out.lines().count(), 4);
    assert_eq!(files_in(dir.path()), ["10D-1000.txt", "2D-500.txt", "4D-1000.txt", "4D-500.txt"]);
    let table = std::fs::read_to_string(dir.path().join("2D-500.txt")).unwrap();
    let rows: Vec<&str> = table.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    for (row, id) in rows.iter().zip(["Random", "LHS", "GreedyFP", "BC", "Hybrid"]) {
        assert!(row.starts_with(id), "{row}");
    }
}

#[test]
fn bench_json_rescores_from_saved_sets() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"name":"small","dim":3,"nSamples":40,"repetitions":2,"seedBase":7,
            "methods":[{"id":"R","method":{"algorithm":"random"}},
                       {"id":"G","method":{"algorithm":"greedy-fp","scale":5}}]}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    ok(&run(&[
        "bench", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap(), "--format", "json,csv",
        "--save-sets",
    ]));
    let report: BenchReport = serde_json::from_str(&std::fs::read_to_string(out.join("small.json")).unwrap()).unwrap();
    let mut checked = 0;
    for m in &report.methods {
        for row in &m.rows {
            let suffix = if row.latinized { "-lat" } else { "" };
            let path = out.join("small").join(format!("{}-rep{}{suffix}.csv", m.id, row.repetition));
            let csv = std::fs::read(&path).unwrap();
            let score = ok(&run_stdin(&["score", "--p", &DEFAULT_P.to_string()], &csv));
            let q: spacefill::QualityReport = serde_json::from_str(&score).unwrap();
            assert_eq!((q.nn_avg, q.phi_p, q.cl2), (row.nn_avg, row.phi_p, row.cl2));
            // Same numbers in-process.
            let set = read_csv(&csv[..], Some(&Domain::unit(3))).unwrap();
            assert_eq!(quality_report(&set, report.p).unwrap().cl2, row.cl2);
            checked += 1;
        }
    }
    assert_eq!(checked, 8);
}

#[test]
fn bench_all_cells_failing_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"name":"bad","dim":2,"nSamples":10,"repetitions":1,
            "methods":[{"id":"G","method":{"algorithm":"greedy-fp","scale":0}}]}"#,
    )
    .unwrap();
    let out = run(&["bench", "--spec", spec.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
