//! End-to-end tests of the binary: exit-code contract, report shapes, and
//! byte-stable JSON output.

use std::io::Write;
use std::process::{Command, Output};

use hyperfan::doc::{serialize_document, Document};
use hyperfan::fans::quadrant_fan;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperfan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("hyperfan-cli-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn types_census_text_and_exit() {
    let out = run(&["types", "--dim", "3", "--toric-degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("count=7"));
    assert!(text.contains("(h-h)_t"));
}

#[test]
fn surface_pipes_into_invariants() {
    let out = run(&["surface", "--kind", "sphere8"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write_temp("sphere8.json", &stdout(&out));
    let inv = run(&["invariants", &path]);
    assert_eq!(inv.status.code(), Some(0));
    assert!(stdout(&inv).contains("chi=2 orientable=true closed=true"));

    let genus2 = run(&["surface", "--kind", "genus:2"]);
    let path = write_temp("genus2.json", &stdout(&genus2));
    let inv = run(&["invariants", &path]);
    assert!(stdout(&inv).contains("chi=-2 orientable=true closed=true"));
}

#[test]
fn fan_validate_complete_locate_glue() {
    let fan_doc = serialize_document(&Document::Fan(quadrant_fan().unwrap())).unwrap();
    let path = write_temp("quadrant.json", &fan_doc);
    assert_eq!(run(&["validate-fan", &path]).status.code(), Some(0));
    assert_eq!(run(&["complete", &path]).status.code(), Some(0));
    let out = run(&["locate", &path, "--point", "1,1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("cone="));
    // Glue the quadrant-fan domain (a square, 4 edges) with two labels
    // alternating in geometric cyclic order (facet cells are the rays in
    // construction order -e1, -e2, +e2, +e1): the result is a torus.
    let out = run(&["glue", &path, "--labels", "1,2,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let glued = write_temp("glued.json", &stdout(&out));
    let inv = run(&["invariants", &glued]);
    assert!(stdout(&inv).contains("chi=0"));
}

#[test]
fn incomplete_fan_exits_one() {
    // Upper half plane: valid fan, not complete.
    let doc = r#"{
        "schema_version": "1",
        "kind": "Fan",
        "payload": {
            "dim": 2,
            "cones": [
                [],
                [["1", "0"]], [["0", "1"]], [["-1", "0"]],
                [["1", "0"], ["0", "1"]], [["0", "1"], ["-1", "0"]]
            ],
            "ray_marks": []
        }
    }"#;
    let path = write_temp("half.json", doc);
    assert_eq!(run(&["validate-fan", &path]).status.code(), Some(0));
    assert_eq!(run(&["complete", &path]).status.code(), Some(1));
}

#[test]
fn arrangement_infeasible_exits_one_with_certificate() {
    let doc = r#"{
        "schema_version": "1",
        "kind": "Arrangement",
        "payload": {
            "curve_count": 3,
            "domains": [[0, 1, 2], [0, 2, 1]],
            "orientation_flags": [true, true]
        }
    }"#;
    let path = write_temp("arr.json", doc);
    let out = run(&["arrangement", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("certificate_domains=[0, 1]"));
}

#[test]
fn normalize_and_nf_check() {
    let doc = r#"{
        "schema_version": "1",
        "kind": "VectorField",
        "payload": {
            "dim": 1,
            "eigenvalues": [{"re": "1", "im": "0"}],
            "terms": [{"exponents": [2], "component": 0,
                       "coefficient": {"re": "1", "im": "0"}}]
        }
    }"#;
    let path = write_temp("field.json", doc);
    // x d/dx + x^2 d/dx is not normal; its normal form is linear.
    assert_eq!(run(&["nf-check", &path, "--degree", "4"]).status.code(), Some(1));
    let out = run(&["normalize", &path, "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"terms\": []"), "normal form is linear: {text}");
    let nf_doc = text.splitn(2, '\n').nth(1).unwrap();
    let nf_path = write_temp("field-nf.json", nf_doc);
    assert_eq!(run(&["nf-check", &nf_path, "--degree", "4"]).status.code(), Some(0));
}

#[test]
fn resonance_report_fields() {
    let doc = r#"{
        "schema_version": "1",
        "kind": "VectorField",
        "payload": {
            "dim": 2,
            "eigenvalues": [{"re": "1", "im": "0"}, {"re": "2", "im": "0"}],
            "terms": []
        }
    }"#;
    let path = write_temp("res.json", doc);
    let out = run(&["resonance", &path, "--bound", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["resonance_rank"], 1);
    assert_eq!(v["toric_degree"], 1);
}

#[test]
fn marked_graph_classify() {
    let doc = r#"{
        "schema_version": "1",
        "kind": "MarkedGraph",
        "payload": {
            "topology": "interval",
            "ambient_dim": 2,
            "vertices": [
                {"v": ["1", "0"], "w": ["0", "1"]},
                {"v": ["-1", "0"], "w": ["0", "1"]}
            ],
            "lattice": [["0", "1"]]
        }
    }"#;
    let path = write_temp("graph.json", doc);
    assert_eq!(run(&["marked-graph", &path]).status.code(), Some(0));
    let out = run(&["classify", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("case=d name=S^2"));
}

#[test]
fn monodromy_decompose_and_retwist() {
    let doc = r#"{
        "schema_version": "1",
        "kind": "Monodromy",
        "payload": {
            "relations": [["2", "0"]],
            "generator_count": 2,
            "modulus_dim": 2,
            "modulus_generators": [["0", "1"]],
            "mu": [["0", "1/2"], ["3", "7"]],
            "new_free": [["1", "1"]]
        }
    }"#;
    let path = write_temp("mono.json", doc);
    let out = run(&["monodromy", "decompose", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("torsion_generators=1 free_generators=1"));
    let out = run(&["monodromy", "retwist", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mu"][1], serde_json::json!(["1", "1"]));
}

#[test]
fn parse_errors_exit_two() {
    let zero_denom = r#"{
        "schema_version": "1",
        "kind": "VectorField",
        "payload": {"dim": 1, "eigenvalues": [{"re": "1/0", "im": "0"}], "terms": []}
    }"#;
    let path = write_temp("bad.json", zero_denom);
    assert_eq!(run(&["resonance", &path, "--bound", "3"]).status.code(), Some(2));
    assert_eq!(run(&["complete", "/no/such/file"]).status.code(), Some(2));
    // Wrong document kind for the subcommand is an operational error too.
    assert_eq!(run(&["complete", &path]).status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_stable() {
    for args in [
        vec!["types", "--dim", "4", "--toric-degree", "2", "--json"],
        vec!["surface", "--kind", "genus:1", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(stdout(&a), stdout(&b), "unstable output for {args:?}");
        // Valid JSON with sorted keys at the top level.
        let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        assert!(v.is_object());
    }
}
