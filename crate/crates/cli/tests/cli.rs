use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bt-wonder"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn eval(system: &str, points: &str, poly: &str, extra: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "points.txt", points);
    let f = write(dir.path(), "poly.txt", poly);
    let mut args = vec!["--system", system];
    args.extend_from_slice(extra);
    args.extend(["eval", p.to_str().unwrap(), f.to_str().unwrap()]);
    run(&args)
}

/// Asserts a failed run with a single `error[kind]:` line on stderr.
fn assert_error(o: &Output, kind: &str, code: i32) {
    assert_eq!(o.status.code(), Some(code), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error[{kind}]: ")), "{err}");
}

#[test]
fn eval_a1_mixed_terms() {
    // val_x(α) = -1, val_y(α) = 1, f = χ_α + ξ_α: terms give 2 and -1
    let o =
        eval("A1", "x ; [] ; -1\ny ; [] ; -1\n", "ring = laurent\n1 ; chi = 1\n1 ; nu = (0:1)\n", &["--decimals", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "val = -1\nabs = 2.0000\n");
}

#[test]
fn eval_vanishing_coordinate() {
    let o = eval("A1", "y ; [] ; inf\n", "ring = monoid\n1 ; chi = 1\n", &["--decimals", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "val = inf\nabs = 0.000\n");
}

#[test]
fn eval_gauss_point() {
    let o =
        eval("A2", "y ; [] ; 0, 0\n", "ring = laurent\n3/4 ; chi = 1, -1\n6 ; nu = (0:1, 4:2)\n", &["--prime", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // min(val_3(3/4), val_3(6)) = 1
    assert_eq!(stdout(&o), "val = 1\n");
}

#[test]
fn eval_laurent_at_boundary_is_math_error() {
    let o = eval("A1", "y ; [] ; inf\n", "ring = laurent\n1 ; chi = 1\n", &[]);
    assert_error(&o, "math", 1);
}

#[test]
fn eval_parse_error_names_the_line() {
    let o = eval("A2", "# header\ny ; [] ; 1\n", "ring = laurent\n1\n", &[]);
    assert_error(&o, "parse", 1);
    assert!(stderr(&o).contains("points.txt:2: expected 2 values"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_io_error() {
    let o = run(&["eval", "/nonexistent/p.txt", "/nonexistent/f.txt"]);
    assert_error(&o, "io", 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_error(&run(&["--system", "Z9", "roots"]), "usage", 2);
    assert_error(&run(&["--base", "1", "roots"]), "usage", 2);
    assert_error(&run(&["frobnicate"]), "usage", 2);
    assert_error(&run(&["verify", "--suite", "nonsense"]), "usage", 2);
}

#[test]
fn classify_reports_each_y() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.txt", "y ; [0] ; 1/2, inf\ny ; [0 1 0] ; inf, inf\ny ; [] ; 0, 0\n");
    let o = run(&["--system", "A2", "classify", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    // s_1 fixes the stratum of type {a1}, so the chart reduces to the identity
    assert!(lines[0].starts_with("line 1: tau=10 chart=[] "), "{}", lines[0]);
    assert!(lines[1].contains("tau=00") && lines[1].contains("closed=true"), "{}", lines[1]);
    assert!(lines[2].contains("tau=11") && lines[2].contains("open=true"), "{}", lines[2]);
    assert!(lines.iter().all(|l| l.ends_with("membership=ok")));
}

#[test]
fn plot_chamber_counts() {
    let dir = TempDir::new().unwrap();
    for (s, chambers, overlay, base_points) in [("A2", 6, false, 0), ("B2", 8, false, 0), ("G2", 12, true, 4)] {
        let prefix = dir.path().join(s);
        let mut args = vec!["--system", s, "--out", prefix.to_str().unwrap(), "plot"];
        if overlay {
            args.push("--overlay");
        }
        let o = run(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        let csv = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
        let svg = std::fs::read_to_string(prefix.with_extension("svg")).unwrap();
        let count = |kind: &str| csv.lines().filter(|l| l.starts_with(&format!("{kind},"))).count();
        assert_eq!(count("chamber"), chambers, "{s}");
        assert_eq!(count("corner"), 1, "{s}");
        assert_eq!(count("base_point"), base_points, "{s}");
        assert_eq!(svg.matches(r#"class="chamber""#).count(), chambers, "{s}");
        assert_eq!(svg.matches(r#"class="base-point""#).count(), base_points, "{s}");
    }
}

#[test]
fn plot_needs_rank_two() {
    let dir = TempDir::new().unwrap();
    let prefix = dir.path().join("a3");
    assert_error(&run(&["--system", "A3", "--out", prefix.to_str().unwrap(), "plot"]), "input", 1);
}

#[test]
fn verify_all_on_a2_passes() {
    let o = run(&["--system", "A2", "verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    let names: Vec<String> = out
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["passed"], true, "{l}");
            assert!(v.get("elapsed_ms").is_none());
            v["check"].as_str().unwrap().to_string()
        })
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 9, "{names:?}");
}

#[test]
fn verify_timing_is_opt_in() {
    let o = run(&["--system", "A1", "verify", "--suite", "gauss", "--samples", "5", "--timing"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn roots_table_lists_every_root() {
    let o = run(&["--system", "B2", "roots"]);
    assert!(o.status.success());
    // header plus 8 roots
    assert_eq!(stdout(&o).lines().count(), 9);
}
