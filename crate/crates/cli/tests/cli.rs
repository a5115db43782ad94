//! Black-box tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_tilekit");

fn rules_dir() -> String {
    format!("{}/../../rules", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(format!("{}/../..", env!("CARGO_MANIFEST_DIR")))
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_rule_passes_on_corpus() {
    for name in ["table", "triangle"] {
        let out = run(&["check-rule", &format!("rules/{name}.json")]);
        assert!(out.status.success(), "{name}: {out:?}");
        let text = stdout(&out);
        assert!(text.contains("self-similar: ok"), "{text}");
        assert!(text.contains("flc: certified"), "{text}");
        assert!(text.contains("result: pass"), "{text}");
    }
}

#[test]
fn check_rule_missing_file_is_io_error() {
    let out = run(&["check-rule", "no-such-rule.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rule_broken_rule_is_violation() {
    let dir = std::env::temp_dir().join("tilekit-cli-broken");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    // drop one placement: the dissection no longer fills the doubled tile
    let text = std::fs::read_to_string(format!("{}/table.json", rules_dir())).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["substitution"][0]["placements"]
        .as_array_mut()
        .unwrap()
        .pop();
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = run(&["check-rule", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn corpus_dir_env_var_resolves_bare_names() {
    let out = Command::new(BIN)
        .args(["check-rule", "table.json"])
        .env("TILEKIT_CORPUS_DIR", rules_dir())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = [
        "verify",
        "rules/triangle.json",
        "-k",
        "2",
        "--samples",
        "200",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let text = stdout(&a);
    assert!(text.contains("seed: 7"), "{text}");
    assert!(text.contains("samples: 200"), "{text}");
    assert!(text.contains("result: pass"), "{text}");
}

#[test]
fn verify_check_subset_runs_only_requested() {
    let out = run(&[
        "verify",
        "rules/table.json",
        "-k",
        "1",
        "--checks",
        "graph,pairs",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("graph[table]"), "{text}");
    assert!(text.contains("pairs:"), "{text}");
    assert!(!text.contains("lonely["), "{text}");
    assert!(!text.contains("star["), "{text}");
}

#[test]
fn verify_rejects_unknown_check() {
    let out = run(&["verify", "rules/table.json", "--checks", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demo_fig1_report() {
    let out = run(&["demo-fig1", "-k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("origin-vertex-count: 1"), "{text}");
    assert!(text.contains("origin-interior: false"), "{text}");
    assert!(text.contains("tiles-meeting-disc: 4"), "{text}");
}

#[test]
fn demo_fig1_json_mirror() {
    let out = run(&["demo-fig1", "-k", "0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["origin_vertex_count"], 1);
    assert_eq!(v["result"], "pass");
}

#[test]
fn render_rule_supertile() {
    let dir = std::env::temp_dir().join("tilekit-cli-render");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("table2.svg");
    let out = run(&[
        "render",
        "rules/table.json",
        "-k",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 16);
    assert!(svg.starts_with("<svg"));
}

#[test]
fn render_fig1_with_overlays() {
    let dir = std::env::temp_dir().join("tilekit-cli-render");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("fig1.svg");
    let out = run(&[
        "render",
        "fig1",
        "-k",
        "5",
        "--out",
        out_path.to_str().unwrap(),
        "--graph",
        "--markers",
    ]);
    assert!(out.status.success(), "{out:?}");
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 8);
    assert!(svg.contains("<line"));
}

#[test]
fn render_patch_file() {
    let dir = std::env::temp_dir().join("tilekit-cli-render");
    std::fs::create_dir_all(&dir).unwrap();
    let patch_path = dir.join("one.txt");
    std::fs::write(&patch_path, "2 0\n0,0;1,0;1,1;0,1\n").unwrap();
    let out_path = dir.join("one.svg");
    let out = run(&[
        "render",
        patch_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(Path::new(&out_path).exists());
}
