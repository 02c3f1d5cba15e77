use std::path::Path;
use std::process::Command;

use crcode::codes::CodeDescriptor;
use crcode::graphs::{import_graph, GraphFormat};

fn crcode(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_crcode"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn descriptors(dir: &Path) -> Vec<CodeDescriptor> {
    let mut names: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json") && p.file_name().unwrap() != "build_report.json"
        })
        .collect();
    names.sort();
    names
        .iter()
        .map(|p| serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap())
        .collect()
}

#[test]
fn build_writes_one_code_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = crcode(&["build", "--m", "4", "--out", path_str(dir.path())]);
    assert_eq!(code, 0);
    let descs = descriptors(dir.path());
    assert_eq!(descs.len(), 3);
    for d in &descs {
        let rebuilt = d.rebuild().unwrap();
        assert_eq!(rebuilt.dimension(), 15 - 4 - d.i);
        let parity = std::fs::read_to_string(dir.path().join(format!("code_m4_i{}.parity", d.i))).unwrap();
        assert_eq!(parity, rebuilt.parity().to_text());
    }
}

#[test]
fn build_single_level_and_alternate_basis() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = crcode(&[
        "build",
        "--m",
        "6",
        "--levels",
        "3",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);
    let descs = descriptors(dir.path());
    assert_eq!(descs.len(), 1);
    assert_eq!(descs[0].i, 3);

    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = crcode(&[
        "build",
        "--m",
        "6",
        "--subspace-basis",
        "011,101",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);
    let mut dims: Vec<usize> = descriptors(dir.path()).iter().map(|d| d.dimension).collect();
    dims.sort();
    assert_eq!(dims, vec![54, 55, 56, 57]);
    assert_eq!(
        descriptors(dir.path())[2].chain_basis[..2],
        ["011".to_string(), "101".to_string()]
    );
}

#[test]
fn verify_cr_reports_arrays() {
    let (code, stdout, _) = crcode(&["verify", "--m", "4", "--suite", "cr"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    let arrays: Vec<String> = report["suites"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["tag"] == "cr-array")
        .map(|c| c["detail"]["array"].as_str().unwrap().to_string())
        .collect();
    assert!(arrays.contains(&"(15, 12, 1; 1, 4, 15)".to_string()));
    assert!(arrays.contains(&"(15, 8, 1; 1, 8, 15)".to_string()));
}

#[test]
fn verify_ct_and_cover() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, stderr) = crcode(&[
        "verify",
        "--m",
        "6",
        "--suite",
        "ct",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    for c in report["suites"][0]["checks"].as_array().unwrap() {
        if c["tag"] == "ct-orbits" && c["level"].as_u64().unwrap() > 0 {
            assert_eq!(c["detail"]["orbit_count"], 4);
        }
    }
    let (code, _, stderr) = crcode(&["verify", "--m", "4", "--suite", "cover"]);
    assert_eq!(code, 0);
    assert!(stderr.contains("cover-2-to-1"));
    assert!(stderr.contains("cover-1-to-0"));
}

#[test]
fn reports_are_reproducible_apart_from_timings() {
    let run = || {
        let (_, stdout, _) = crcode(&["verify", "--m", "4", "--extended"]);
        let mut v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn export_graph6_and_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "export",
        "--m",
        "4",
        "--i",
        "2",
        "--format",
        "graph6",
        "--out",
        path_str(dir.path()),
    ];
    assert_eq!(crcode(&args).0, 0);
    let file = dir.path().join("Γ_m4_i2.g6");
    let first = std::fs::read(&file).unwrap();
    let g = import_graph(std::str::from_utf8(&first).unwrap(), GraphFormat::Graph6).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (64, 480));
    assert_eq!(crcode(&args).0, 0);
    assert_eq!(std::fs::read(&file).unwrap(), first);

    let (code, stdout, _) = crcode(&[
        "export",
        "--m",
        "6",
        "--i",
        "1",
        "--extended",
        "--format",
        "edge-list",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.trim().ends_with("Γ_m6_i1_ext.edges"));
    let text = std::fs::read_to_string(dir.path().join("Γ_m6_i1_ext.edges")).unwrap();
    let g = import_graph(&text, GraphFormat::EdgeList).unwrap();
    assert_eq!((g.vertex_count(), g.valency()), (256, Some(64)));
}

#[test]
fn conjecture_tables() {
    for m in ["4", "6"] {
        let (code, stdout, _) = crcode(&["conjecture", "--m", m]);
        assert_eq!(code, 0);
        assert_eq!(
            stdout.lines().filter(|l| l.contains("\"certified\"")).count(),
            m.parse::<usize>().unwrap() / 2 + 1
        );
    }
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "m = 4\nsuites = [\"up\"]\nlevels = [2]\n").unwrap();
    let (code, stdout, _) = crcode(&["verify", "--config", path_str(&cfg)]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["summary"]["checks"], 1);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(crcode(&["verify", "--m", "5"]).0, 3);
    assert_eq!(crcode(&["verify", "--m", "8"]).0, 3);
    assert_eq!(crcode(&["verify", "--m", "4", "--suite", "nope"]).0, 3);
    assert_eq!(crcode(&["build", "--m", "6", "--subspace-basis", "011,011"]).0, 3);
    assert_eq!(crcode(&["verify", "--m", "4", "--prim-poly-m", "0x1f"]).0, 3);
    assert_eq!(
        crcode(&["export", "--m", "4", "--i", "1", "--format", "dot"]).0,
        3
    );
    assert_eq!(crcode(&["frobnicate"]).0, 3);
}
