use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use palette_core::io::{parse_multigraph, parse_report};

fn palette(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palette"))
        .args(args)
        .env_remove("PALETTE_TIME_BUDGET")
        .env_remove("PALETTE_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(o: &Output, key: &str) -> Option<String> {
    parse_report(&stdout(o)).into_iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = palette(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn generate_windmill() {
    let o = palette(&["generate", "--family", "h_delta_t", "--delta", "8", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_multigraph(&stdout(&o)).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (9, 16));
}

#[test]
fn generate_gdelta() {
    let o = palette(&["generate", "--family", "g_delta", "--delta", "4"]);
    let g = parse_multigraph(&stdout(&o)).unwrap();
    assert_eq!(g.vertex_count(), 10);
    assert_eq!(g.edge_count(), 14);
}

#[test]
fn odd_delta_is_rejected() {
    let o = palette(&["generate", "--family", "h_delta_t", "--delta", "5", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
    let o = palette(&["generate", "--family", "complete"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn k5_palette_index() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = generate(dir.path(), "k5.txt", &["--family", "complete", "--n", "5"]);
    let witness = dir.path().join("w.txt");
    let o = palette(&["palette-index", "--in", k5.to_str().unwrap(), "--witness", witness.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("palette_index 4 exact"));
    let check = palette(&["check-coloring", "--in", k5.to_str().unwrap(), "--coloring", witness.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(value(&check, "palettes").as_deref(), Some("4"));
}

#[test]
fn k4_and_star_chi_prime_s() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = generate(dir.path(), "k4.txt", &["--family", "complete", "--n", "4"]);
    let o = palette(&["chi-prime-s", "--in", k4.to_str().unwrap()]);
    assert_eq!(value(&o, "palette_index").as_deref(), Some("1 exact"));
    assert_eq!(value(&o, "chi_prime_s").as_deref(), Some("3"));
    let star = generate(dir.path(), "star.txt", &["--family", "star", "--n", "5"]);
    let o = palette(&["chi-prime-s", "--in", star.to_str().unwrap(), "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["chi_prime_s"], 5);
}

#[test]
fn decomposition_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g4 = generate(dir.path(), "g4.txt", &["--family", "g_delta", "--delta", "4"]);
    let o = palette(&["palette-index", "--in", g4.to_str().unwrap(), "--decompose"]);
    assert_eq!(value(&o, "palette_index").as_deref(), Some("7 exact"));
    assert_eq!(value(&o, "path").as_deref(), Some("decomposition"));
}

#[test]
fn budget_exhaustion_is_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let k56 = generate(dir.path(), "k56.txt", &["--family", "complete_bipartite", "--m", "5", "--n", "6"]);
    let o = palette(&["palette-index", "--in", k56.to_str().unwrap(), "--time-budget", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(value(&o, "palette_index").unwrap().ends_with("bounded"));
    let o = palette(&["chi-prime-s", "--in", k56.to_str().unwrap(), "--time-budget", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(value(&o, "chi_prime_s").as_deref(), Some("unknown"));
}

#[test]
fn improper_coloring_fails() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p3.txt", &["--family", "path", "--n", "3"]);
    let c = dir.path().join("c.txt");
    fs::write(&c, "k 2\n0 1\n1 1\n").unwrap();
    let o = palette(&["check-coloring", "--in", p.to_str().unwrap(), "--coloring", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&o, "proper").as_deref(), Some("false"));
    fs::write(&c, "k 2\n0 1\n7 0\n").unwrap();
    let o = palette(&["check-coloring", "--in", p.to_str().unwrap(), "--coloring", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn palette_graph_of_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "p3.txt", &["--family", "path", "--n", "3"]);
    let c = dir.path().join("c.txt");
    fs::write(&c, "k 2\n0 0\n1 1\n").unwrap();
    let args = ["palette-graph", "--in", p.to_str().unwrap(), "--coloring", c.to_str().unwrap()];
    let o = palette(&args);
    assert_eq!(value(&o, "vertices").as_deref(), Some("3"));
    assert_eq!(value(&o, "simple_forest").as_deref(), Some("yes"));
    let mut dot = args.to_vec();
    dot.push("--dot");
    let o = palette(&dot);
    for label in ["{0}", "{0,1}", "{1}"] {
        assert!(stdout(&o).contains(&format!("\"{label}\"")));
    }
}

#[test]
fn matrices() {
    let o = palette(&["matrix", "--builtin", "m56"]);
    assert_eq!(value(&o, "colors_used").as_deref(), Some("12"));
    assert_eq!(value(&o, "palettes").as_deref(), Some("6"));
    let o = palette(&["matrix", "--builtin", "m56-prime"]);
    assert_eq!(value(&o, "colors_used").as_deref(), Some("8"));
    assert_eq!(value(&o, "graph").as_deref(), Some("K5,6"));

    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    fs::write(&m, "1 2 3\n2 1 1\n").unwrap();
    let o = palette(&["matrix", "--file", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(value(&o, "error").unwrap().contains("row 2, column 3"));
}

#[test]
fn interval_checks() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = generate(dir.path(), "c5.txt", &["--family", "cycle", "--n", "5"]);
    let o = palette(&["check-interval", "--in", c5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&o, "interval_coloring").as_deref(), Some("none exact"));
    let k4 = generate(dir.path(), "k4.txt", &["--family", "complete", "--n", "4"]);
    let o = palette(&["check-interval", "--in", k4.to_str().unwrap(), "--bound"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&o, "bound_status").as_deref(), Some("holds"));
}

#[test]
fn verify_kn_table() {
    let o = palette(&["verify", "--suite", "kn-table", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("check.K") && l.contains(" pass ")).count(), 5);
}

#[test]
fn verify_forest_lemma() {
    let o = palette(&["verify", "--suite", "forest-lemma", "--delta", "4", "--samples", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("forests 100/100").count(), 2);
}

#[test]
fn verify_skips_slow_instances() {
    let o = palette(&["verify", "--suite", "gdelta-bounds", "--delta", "6"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(value(&o, "status").as_deref(), Some("skipped"));
}

#[test]
fn verify_is_reproducible() {
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("elapsed_ms")).collect::<Vec<_>>().join("\n");
    let args = ["verify", "--suite", "palette-graph-identities", "--samples", "50", "--seed", "11"];
    let a = palette(&args);
    let b = palette(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn verify_json() {
    let o = palette(&["verify", "--suite", "matrices", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json[0]["suite"], "matrices");
    assert_eq!(json[0]["status"], "pass");
}

#[test]
fn env_budget_override() {
    let dir = tempfile::tempdir().unwrap();
    let k56 = generate(dir.path(), "k56.txt", &["--family", "complete_bipartite", "--m", "5", "--n", "6"]);
    let o = Command::new(env!("CARGO_BIN_EXE_palette"))
        .args(["palette-index", "--in", k56.to_str().unwrap()])
        .env("PALETTE_TIME_BUDGET", "0.2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
