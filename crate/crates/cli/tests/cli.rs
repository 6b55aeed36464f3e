use extsheaf_cli::{faces_output, labels_output, run, FacesOutput, LabelsOutput, Outcome};
use std::io::Write;
use std::path::{Path, PathBuf};

const ALL: [&str; 7] =
    ["p1_trivial", "p1_halfint", "p1xp1", "p2", "canonical_l1", "canonical_l2", "synthetic_symmetric_rank1"];

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

fn cli(input: &Path, rest: &[&str]) -> Outcome {
    let mut argv = vec!["extsheaf".to_string(), "--input".into(), input.display().to_string()];
    argv.extend(rest.iter().map(|s| s.to_string()));
    run(argv)
}

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn validate_every_shipped_datum() {
    for name in ALL {
        let out = cli(&example(name), &["--command", "validate"]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn hilbert_block_on_p1() {
    let out = cli(&example("p1_trivial"), &["--command", "hilbert", "--block", "0:0", "--cutoff", "8"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["blocks"][0]["hilbert"], serde_json::json!([1, 0, 2, 0, 2, 0, 2, 0, 2]));
}

#[test]
fn faces_and_labels_round_trip() {
    for name in ALL {
        let text = std::fs::read_to_string(example(name)).unwrap();
        let loaded = extsheaf::document::load(&text).unwrap();
        let out = cli(&example(name), &["--command", "faces"]);
        let parsed: FacesOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(parsed, faces_output(&loaded, name, 20).unwrap());
        let out = cli(&example(name), &["--command", "labels"]);
        let parsed: LabelsOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(parsed, labels_output(&loaded, name, 20).unwrap());
    }
}

#[test]
fn canonical_l1_faces() {
    let out = cli(&example("canonical_l1"), &["--command", "faces"]);
    let parsed: FacesOutput = serde_json::from_str(&out.stdout).unwrap();
    let closed = parsed.faces.iter().find(|f| f.id == "{v1}|{1}").unwrap();
    assert_eq!(closed.open, vec!["{}|{1}", "{v1}|{1}"]);
    assert_eq!(parsed.faces.len(), 3);
}

#[test]
fn ext_output_is_deterministic_and_complete() {
    let a = cli(&example("p1_halfint"), &["--command", "ext", "--cutoff", "6"]);
    let b = cli(&example("p1_halfint"), &["--command", "ext", "--cutoff", "6", "--sequential"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 16);
    assert_eq!(v["units"].as_array().unwrap().len(), 4);
    assert!(v["blocks"][0]["table"].as_array().is_some());
}

#[test]
fn tsv_is_a_flat_projection() {
    let out = cli(&example("p1_trivial"), &["--command", "hilbert", "--block", "0:0", "--cutoff", "4", "--format", "tsv"]);
    assert!(out.stdout.lines().any(|l| l == "blocks.0.hilbert\t1,0,2,0,2"));
    assert!(out.stdout.lines().all(|l| l.contains('\t')));
}

#[test]
fn cohomology_of_named_open() {
    let out = cli(&example("p1_trivial"), &["--command", "cohomology", "--open", "v+", "--cutoff", "4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["open"]["faces"].as_array().unwrap().len(), 2);
    for b in v["blocks"].as_array().unwrap() {
        assert!(b["cech"].as_array().unwrap().iter().all(|r| r["cech_degree"] == 0));
    }
    let bad = cli(&example("p1_trivial"), &["--command", "cohomology", "--open", "v+,v-"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn exit_codes() {
    let broken = temp_doc("{ not json");
    assert_eq!(cli(broken.path(), &["--command", "validate"]).code, 1);
    assert_eq!(cli(&example("p1_trivial"), &["--command", "validate", "--cutoff", "7"]).code, 1);
    assert_eq!(cli(&example("p1_trivial"), &["--command", "nonsense"]).code, 1);
    assert_eq!(cli(&example("p1_trivial"), &["--command", "hilbert", "--block", "9:0"]).code, 1);
    assert_eq!(cli(Path::new("/nonexistent.json"), &["--command", "validate"]).code, 1);

    let text = std::fs::read_to_string(example("p2")).unwrap();
    let incomplete = temp_doc(&text.replace("[[0, 1], [1, 2], [2, 0]]", "[[0, 1], [1, 2]]"));
    let out = cli(incomplete.path(), &["--command", "validate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("datum invalid"), "{}", out.stderr);

    let sym = std::fs::read_to_string(example("canonical_l1")).unwrap();
    let bad_jmap = temp_doc(&sym.replace(r#"{"delta": [], "J": []}"#, r#"{"delta": [], "J": [1]}"#));
    assert_eq!(cli(bad_jmap.path(), &["--command", "validate"]).code, 2);
}

#[test]
fn check_failure_reports_counterexample() {
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/nongeometric_kdatum.json");
    assert_eq!(cli(&fixture, &["--command", "validate"]).code, 0);
    let out = cli(&fixture, &["--command", "check-all", "--cutoff", "8"]);
    assert_eq!(out.code, 3);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["vanishing", "concentration"]);
    let finding = &v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "vanishing").unwrap()["detail"]["nonvanishing"][0];
    assert_eq!(finding["level"], 1);
    assert_eq!(finding["degree"], 8);
}

#[test]
fn help_exits_zero() {
    let out = run(["extsheaf", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("--command"));
}
