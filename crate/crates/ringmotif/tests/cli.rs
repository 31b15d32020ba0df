use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ringmotif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringmotif")).args(args).output().expect("binary runs")
}

fn karate() -> String {
    format!("{}/data/karate.txt", env!("CARGO_MANIFEST_DIR"))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn run_writes_manifest_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zkc");
    let o = ringmotif(&["run", "--input", &karate(), "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let files: Vec<&str> = manifest["files"].as_array().unwrap().iter().map(|f| f["file"].as_str().unwrap()).collect();
    for name in ["matrix.svg", "motif.svg", "bar.svg", "composite.svg", "decomposition.json", "report.json"] {
        assert!(files.contains(&name), "{name} missing");
        assert!(out.join(name).is_file());
    }
    assert!(!files.contains(&"timings.json"));
}

#[test]
fn emit_restricts_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringmotif(&["run", "--input", &karate(), "--out", p(dir.path()), "--emit", "json", "--timings"]);
    assert!(o.status.success());
    assert!(dir.path().join("decomposition.json").is_file());
    assert!(dir.path().join("timings.json").is_file());
    assert!(!dir.path().join("matrix.svg").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let missing = dir.path().join("nope.txt");
    assert_eq!(ringmotif(&["run", "--input", p(&missing), "--out", p(&out)]).status.code(), Some(4));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n3\n").unwrap();
    let o = ringmotif(&["run", "--input", p(&bad), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(ringmotif(&["run", "--input", &karate(), "--tau", "2", "--out", p(&out)]).status.code(), Some(2));
    let o = ringmotif(&["run", "--input", &karate(), "--reorder", "exact", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(ringmotif(&["run", "--bogus"]).status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("o");
    fs::write(&cfg, format!("input = {}\nsigma = 0.2\ntau = 0.9\nreorder = off\nout = {}\n", karate(), p(&out))).unwrap();
    let o = ringmotif(&["run", "--config", p(&cfg), "--sigma", "0.6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["params"]["sigma"], 0.6);
    assert_eq!(report["params"]["tau"], 0.9);
    assert_eq!(report["reorder"]["mode"], "off");
}

#[test]
fn empty_graph_succeeds_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.txt");
    fs::write(&input, "0000\n0000\n0000\n0000\n").unwrap();
    let out = dir.path().join("o");
    let o = ringmotif(&["run", "--input", p(&input), "--format", "matrix", "--out", p(&out)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let svg = fs::read_to_string(out.join("matrix.svg")).unwrap();
    roxmltree::Document::parse(&svg).unwrap();
    let d: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("decomposition.json")).unwrap()).unwrap();
    assert_eq!(d["patterns"].as_array().unwrap().len(), 0);
}

#[test]
fn generate_then_run_then_render() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let truth = dir.path().join("truth.json");
    let o = ringmotif(&[
        "generate", "--n", "20", "--plant", "clique:6", "--plant", "biclique:3x4", "--seed", "7",
        "--out", p(&graph), "--truth", p(&truth),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(&truth).unwrap()).unwrap();
    assert_eq!(t.as_array().unwrap().len(), 2);

    let out = dir.path().join("run");
    let o = ringmotif(&["run", "--input", p(&graph), "--format", "matrix", "--tau", "1", "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let again = dir.path().join("again");
    let o = ringmotif(&[
        "render", "--input", p(&graph), "--format", "matrix",
        "--decomposition", p(&out.join("decomposition.json")), "--out", p(&again),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(out.join("motif.svg")).unwrap(), fs::read(again.join("motif.svg")).unwrap());
    assert_eq!(fs::read(out.join("layout.json")).unwrap(), fs::read(again.join("layout.json")).unwrap());
}

#[test]
fn generate_rejects_infeasible_spec() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringmotif(&["generate", "--n", "5", "--plant", "clique:6", "--out", p(&dir.path().join("g.txt"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tsplib_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringmotif(&["run", "--input", &karate(), "--out", p(dir.path()), "--emit", "json,tsplib"]);
    assert!(o.status.success());
    let t = fs::read_to_string(dir.path().join("instance.tsp")).unwrap();
    assert!(t.contains("DIMENSION: 35\n"));
    assert_eq!(t.lines().skip_while(|l| *l != "EDGE_WEIGHT_SECTION").skip(1).take_while(|l| *l != "EOF").count(), 35);
}
