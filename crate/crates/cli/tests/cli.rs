use std::path::Path;
use std::process::{Command, Output};

use alexlab_core::symmetry::automorphism_group;
use alexlab_core::{Limits, Poset};
use serde_json::Value;

fn alexlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexlab"))
        .args(args)
        .env_remove(Limits::ENV_MAX_AUT)
        .env_remove(Limits::ENV_MAX_SIMPLICES)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = dir.join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&out)]);
    let o = alexlab(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn analyze(file: &Path, flags: &[&str]) -> Value {
    let mut args = vec!["analyze", path_str(file)];
    args.extend_from_slice(flags);
    let o = alexlab(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn build_reports_point_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, points) in [
        ("w2.json", vec!["w", "--n", "2"], 17),
        ("xhg.json", vec!["x-h-g", "--g", "V4", "--h", "Z2"], 46),
        ("s2.json", vec!["sphere", "--dim", "2"], 6),
        ("xsg.json", vec!["x-star-g", "--g", "Z3"], 10),
    ] {
        let f = build(dir.path(), name, &args);
        assert_eq!(Poset::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap().len(), points);
    }
}

#[test]
fn builder_errors_are_reported() {
    let o = alexlab(&["build", "x-star-g", "--g", "trivial"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nontrivial group"));
    let o = alexlab(&["build", "sphere", "--dim", "3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported sphere dimension"));
}

#[test]
fn analyze_automorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = build(dir.path(), "w2.json", &["w", "--n", "2"]);
    assert_eq!(analyze(&w2, &["--aut"])["aut"]["order"], 1);
    let anti = dir.path().join("anti.json");
    std::fs::write(&anti, Poset::antichain(&["a", "b", "c"]).unwrap().to_json()).unwrap();
    assert_eq!(analyze(&anti, &["--aut"])["aut"]["order"], 6);
}

#[test]
fn analyze_matches_in_memory_results() {
    let dir = tempfile::tempdir().unwrap();
    let f = build(dir.path(), "xhg.json", &["x-h-g", "--g", "Z3", "--h", "Z2"]);
    let p = Poset::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let report = analyze(&f, &["--aut", "--core", "--homology"]);
    let aut = automorphism_group(&p, &Limits::default()).unwrap();
    assert_eq!(report["aut"]["order"], aut.order());
    assert_eq!(report["core"]["size"], alexlab_core::homotopy::core(&p).0.len());
    assert_eq!(report["homology"]["wedge_of_circles"], 6);
}

#[test]
fn tau_table_matches_the_homomorphism() {
    let dir = tempfile::tempdir().unwrap();
    let f = build(dir.path(), "xf.json", &["x-f", "--g", "Z2", "--h", "V4", "--map", "0,2"]);
    let report = analyze(&f, &["--tau", "--g", "Z2", "--h", "V4"]);
    assert_eq!(report["tau"]["decoded"], serde_json::json!([0, 2]));
    assert_eq!(report["tau"]["e_order"], 4);
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let f = build(dir.path(), "s1.json", &["sphere", "--dim", "1"]);
    let dot = dir.path().join("s1.dot");
    analyze(&f, &["--dot", path_str(&dot)]);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 4);
    assert!(text.contains("rank=same"));
}

#[test]
fn caps_come_from_flags_then_environment() {
    let dir = tempfile::tempdir().unwrap();
    let anti = dir.path().join("anti.json");
    std::fs::write(&anti, Poset::antichain(&["a", "b", "c"]).unwrap().to_json()).unwrap();
    let with_env = |value: &str, extra: &[&str]| {
        let mut args = vec!["analyze", path_str(&anti), "--aut"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_alexlab"))
            .args(&args)
            .env(Limits::ENV_MAX_AUT, value)
            .output()
            .unwrap()
    };
    let o = with_env("2", &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_group_order"));
    assert!(with_env("2", &["--max-aut", "10"]).status.success());

    let o = alexlab(&["analyze", path_str(&anti), "--homology", "--max-simplices", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_simplices"));
}

#[test]
fn verify_suite_passes_with_sixteen_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = alexlab(&["verify", "prop53-54", "--report", path_str(&report)]);
    assert!(o.status.success(), "{}", stdout(&o));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["claims"].as_array().unwrap().len(), 16);
    assert_eq!(r["failed"], 0);
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert!(alexlab(&["verify", "properties", "--seed", "7", "--report", path_str(p)]).status.success());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn unknown_suite_is_an_error() {
    let o = alexlab(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn groups_directory_overrides_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    assert!(alexlab(&["group", "Z3", "--out", path_str(&dir.path().join("g.json"))]).status.success());
    assert!(alexlab(&["group", "Z2", "--out", path_str(&dir.path().join("h.json"))]).status.success());
    let report = dir.path().join("r.json");
    let o = alexlab(&["verify", "lemma11", "--groups", path_str(dir.path()), "--report", path_str(&report)]);
    assert!(o.status.success(), "{}", stdout(&o));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let aut = r["claims"].as_array().unwrap().iter().find(|c| c["id"] == "lemma11.x.aut").unwrap();
    assert_eq!(aut["witness"]["order"], 3);
}

#[test]
fn homomorphism_listing() {
    let o = alexlab(&["group", "Z2", "--homs-to", "V4"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn collapse_trace_replays() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.json");
    std::fs::write(&chain, Poset::chain(&["a", "b", "c"]).unwrap().to_json()).unwrap();
    let trace = dir.path().join("trace.json");
    build(
        dir.path(),
        "out.json",
        &["thm13", "--input", path_str(&chain), "--g", "Z2", "--h", "Z2", "--trace-out", path_str(&trace)],
    );
    let o = alexlab(&["verify-collapse", path_str(&chain), path_str(&trace)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 of 3 points remain"));

    std::fs::write(&trace, "[]").unwrap();
    assert_eq!(alexlab(&["verify-collapse", path_str(&chain), path_str(&trace)]).status.code(), Some(1));
}
