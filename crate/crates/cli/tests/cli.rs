use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flatscan::complex::Grid;
use flatscan::shapes::fixtures;
use serde_json::Value;

fn flatscan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatscan")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn save_grid(dir: &Path, name: &str, g: &Grid) -> PathBuf {
    let p = dir.join(format!("{name}.grid"));
    fs::write(&p, g.to_string()).unwrap();
    p
}

fn scan(input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["scan", "--input", input.to_str().unwrap(), "--m", "1", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = flatscan(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    o
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn scan_writes_degree_zero_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let input = save_grid(dir.path(), "annulus", &fixtures::annulus());
    let out = dir.path().join("r.json");
    let o = scan(&input, &out, &["--num-flats", "64", "--seed", "1"]);
    assert!(stdout(&o).starts_with("64 flats"));
    let v = read_json(&out);
    assert_eq!(v["shape_id"], "annulus");
    let flats = v["flats"].as_array().unwrap();
    assert_eq!(flats.len(), 64);
    assert!(flats.iter().all(|f| f["diagrams"].as_array().unwrap().len() == 1));
    assert!(flats.iter().all(|f| f["slice_chi"].is_i64() && f["euler_curve"].is_array()));
}

#[test]
fn max_degree_adds_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let input = save_grid(dir.path(), "annulus", &fixtures::annulus());
    let out = dir.path().join("r.json");
    scan(&input, &out, &["--num-flats", "3", "--max-degree", "1"]);
    let v = read_json(&out);
    for f in v["flats"].as_array().unwrap() {
        let degrees: Vec<u64> = f["diagrams"].as_array().unwrap().iter().map(|d| d["degree"].as_u64().unwrap()).collect();
        assert_eq!(degrees, vec![0, 1]);
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let input = save_grid(dir.path(), "annulus", &fixtures::annulus());
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    scan(&input, &a, &["--num-flats", "16", "--max-degree", "1"]);
    let o = Command::new(env!("CARGO_BIN_EXE_flatscan"))
        .env("FLATSCAN_THREADS", "1")
        .args(["scan", "--input", input.to_str().unwrap(), "--m", "1", "--num-flats", "16", "--max-degree", "1"])
        .args(["--out", b.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn missing_input_exits_2_and_names_the_path() {
    let o = flatscan(&["scan", "--input", "/nonexistent/shape.grid", "--m", "1", "--out", "/tmp/x.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/shape.grid"));
}

#[test]
fn malformed_grid_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.grid");
    fs::write(&input, "grid 2 2\n1 1\n").unwrap();
    let o = flatscan(&["scan", "--input", input.to_str().unwrap(), "--m", "1", "--out", "/tmp/x.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_scans() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let annulus = save_grid(d, "annulus", &fixtures::annulus());
    let plugged = save_grid(d, "plugged", &fixtures::pinholed_annulus());
    let (a, a2, b, c) = (d.join("a.json"), d.join("a2.json"), d.join("b.json"), d.join("c.json"));
    let flags = ["--num-flats", "6", "--max-degree", "1", "--radius", "5"];
    scan(&annulus, &a, &flags);
    scan(&annulus, &a2, &flags);
    scan(&plugged, &b, &flags);
    scan(&annulus, &c, &["--num-flats", "6", "--max-degree", "1", "--seed", "7"]);

    let same = flatscan(&["compare", a.to_str().unwrap(), a2.to_str().unwrap()]);
    assert_eq!(stdout(&same), "degree 0: 0 (flat 0)\ndegree 1: 0 (flat 0)\n");

    let o = flatscan(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("degree 1: inf"), "{text}");

    let w = flatscan(&["compare", a.to_str().unwrap(), b.to_str().unwrap(), "--metric", "wasserstein", "--p", "1"]);
    assert!(stdout(&w).contains("degree 1: inf"));

    let mismatch = flatscan(&["compare", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(3));
}

#[test]
fn ball_and_shell_differ_in_degree_zero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ball = save_grid(d, "ball", &fixtures::ball());
    let shell = save_grid(d, "shell", &fixtures::shell());
    let (a, b) = (d.join("ball.json"), d.join("shell.json"));
    let flags = ["--num-flats", "2", "--radius", "3"];
    scan(&ball, &a, &flags);
    scan(&shell, &b, &flags);
    let o = flatscan(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    let line = stdout(&o);
    let value: f64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(value > 0.0, "{line}");
}

#[test]
fn plot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let input = save_grid(d, "annulus", &fixtures::annulus());
    let r = d.join("r.json");
    scan(&input, &r, &["--num-flats", "2", "--max-degree", "1"]);
    let (s1, s2) = (d.join("1.svg"), d.join("2.svg"));
    for s in [&s1, &s2] {
        let o = flatscan(&["plot", "--input", r.to_str().unwrap(), "--out", s.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let svg = fs::read_to_string(&s1).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("Euler curve"));
    assert_eq!(svg, fs::read_to_string(&s2).unwrap());

    let single = d.join("d.json");
    fs::write(&single, r#"{"degree": 0, "points": [[0.0, "inf"]]}"#).unwrap();
    let o = flatscan(&["plot", "--input", single.to_str().unwrap(), "--out", s1.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&s1).unwrap().matches("<circle").count(), 1);

    fs::write(&single, "{\"degree\": 0, \"points\": [").unwrap();
    let o = flatscan(&["plot", "--input", single.to_str().unwrap(), "--out", s1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn demos_pass() {
    for name in ["annulus", "ball-sphere", "hpht-vs-cpht", "chi-table"] {
        let o = flatscan(&["demo", name]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn euler_and_probes() {
    let dir = tempfile::tempdir().unwrap();
    let input = save_grid(dir.path(), "annulus", &fixtures::annulus());
    let o = flatscan(&["euler", "--input", input.to_str().unwrap(), "--m", "1", "--num-flats", "3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for f in v["flats"].as_array().unwrap() {
        assert_eq!(f["euler_curve"].as_array().unwrap().last().unwrap()[1], 0);
    }
    let o = flatscan(&["probe", "injectivity", "--grid-size", "3", "--pairs", "20"]);
    assert!(stdout(&o).contains("of 20 pairs distinguished"));
    let o = flatscan(&["probe", "continuity", "--steps", "3"]);
    assert!(stdout(&o).contains("stability violations: 0"));
}

#[test]
fn num_flats_must_be_positive() {
    let o = flatscan(&["scan", "--input", "x.grid", "--m", "1", "--num-flats", "0", "--out", "y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scans_off_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tetra.off");
    fs::write(
        &input,
        "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n",
    )
    .unwrap();
    let out = dir.path().join("t.json");
    scan(&input, &out, &["--num-flats", "5", "--max-degree", "2"]);
    let v = read_json(&out);
    for f in v["flats"].as_array().unwrap() {
        // hollow tetrahedron: one component and one enclosed void
        let d = f["diagrams"].as_array().unwrap();
        assert_eq!(d[0]["points"].as_array().unwrap().iter().filter(|p| p[1] == "inf").count(), 1);
        assert_eq!(d[2]["points"].as_array().unwrap().iter().filter(|p| p[1] == "inf").count(), 1);
        assert_eq!(f["euler_curve"].as_array().unwrap().last().unwrap()[1], 2);
    }
}
