//! Exit-code and report-format contract of the binary.

use std::path::PathBuf;
use std::process::Command;

use galefan::fan::Triangulation;
use galefan::fixtures;
use galefan::json as schema;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galefan"))
}

fn write_input(name: &str, doc: &Value) -> PathBuf {
    let path = std::env::temp_dir().join(format!("galefan-cli-{}-{}.json", std::process::id(), name));
    std::fs::write(&path, serde_json::to_string(doc).unwrap()).unwrap();
    path
}

fn pentagon_doc() -> Value {
    let v = fixtures::pentagon().unwrap();
    let mut doc = schema::configuration_to_json(&v);
    let t = Triangulation::from_slices(5, 2, &fixtures::pentagon_simplices()).unwrap();
    doc["simplices"] = schema::triangulation_to_json(&t)["simplices"].clone();
    doc
}

fn blowup_doc() -> Value {
    let v = fixtures::blowup_seven().unwrap();
    let mut doc = schema::configuration_to_json(&v);
    let t = Triangulation::from_slices(7, 2, &fixtures::blowup_simplices()).unwrap();
    doc["simplices"] = schema::triangulation_to_json(&t)["simplices"].clone();
    doc
}

#[test]
fn check_fan_pentagon_succeeds_with_h_vector() {
    let path = write_input("pentagon", &pentagon_doc());
    let out = bin().arg("check-fan").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("CompleteSimplicialFan"));
    assert!(text.contains("h = (1,3,1)"));
}

#[test]
fn analyze_seven_vector_reports_paper_values() {
    let path = write_input("blowup", &blowup_doc());
    let out = bin().arg("analyze").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("complex_dim 4"));
    assert!(text.contains("(rational)"));
    assert!(text.contains("closed torus leaves"));
    assert!(text.contains("Betti (1,0,3,0,1)"));
}

#[test]
fn render_rejects_non_planar_input() {
    let doc = json!({ "d": 1, "h": 2, "vectors": [["1"], ["-1"]] });
    let path = write_input("line", &doc);
    let out = bin().arg("render").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("render requires d = 2"));
}

#[test]
fn invalid_fan_exits_two_with_certificate() {
    let doc = json!({
        "d": 2, "h": 3,
        "vectors": [["1","0"],["0","1"],["-1","-1"]],
        "simplices": [[1,2],[2,3]],
    });
    let path = write_input("badfan", &doc);
    let out = bin()
        .arg("check-fan")
        .arg(&path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["certificate"]["status"], "Failure");
    assert!(report["certificate"]["failure"]["kind"].is_string());
}

#[test]
fn missing_file_exits_one() {
    let out = bin().arg("analyze").arg("/no/such/file.json").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_reports_round_trip() {
    let path = write_input("pentagon-json", &pentagon_doc());
    let out = bin()
        .arg("check-fan")
        .arg(&path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reserialized: Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, reserialized);
    assert_eq!(report["certificate"]["status"], "CompleteSimplicialFan");
    assert_eq!(report["h"], json!([1, 3, 1]));

    // Identical invocation, byte-identical output.
    let again = bin()
        .arg("check-fan")
        .arg(&path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn gale_output_feeds_back_through_the_dual() {
    let path = write_input("blowup-gale", &blowup_doc());
    let out = bin()
        .arg("gale")
        .arg(&path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let points: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(points["m"], json!(2));
    let back_in = write_input("blowup-points", &points);
    let out2 = bin()
        .arg("gale")
        .arg(&back_in)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(0));
    let cfg: Value = serde_json::from_slice(&out2.stdout).unwrap();
    let v = schema::configuration_from_json(&cfg).unwrap();
    let orig = fixtures::blowup_seven().unwrap();
    assert!(v.matrix().same_row_space(&orig.matrix()));
}

#[test]
fn render_writes_deterministic_svg() {
    let path = write_input("pentagon-svg", &pentagon_doc());
    let out_path = std::env::temp_dir().join(format!("galefan-cli-{}.svg", std::process::id()));
    let status = bin()
        .arg("render")
        .arg(&path)
        .args(["--out", out_path.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let first = std::fs::read_to_string(&out_path).unwrap();
    assert!(first.starts_with("<svg"));
    assert_eq!(first.matches("<polygon").count(), 5);
    bin()
        .arg("render")
        .arg(&path)
        .args(["--out", out_path.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), first);
}

#[test]
fn delzant_reports_labels() {
    let doc = json!({
        "d": 2, "h": 4,
        "normals": [["1","0"],["0","1"],["-1","0"],["0","-1"]],
        "levels": ["0","0","-1","-1"],
        "quasilattice": { "dim": 2, "generators": [["1","0"],["0","1"]] },
    });
    let path = write_input("square", &doc);
    let out = bin()
        .arg("delzant")
        .arg(&path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["delzant"]["delzant"], json!(true));
    assert_eq!(report["delzant"]["labels"], json!(["1", "1", "1", "1"]));
}
