use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use femkit::cli::{parse_buckling_report, parse_static_report, StaticReport};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_femkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr carries a JSON error")
}

#[test]
fn static_cantilever_tip() {
    let model = data("cantilever.json");
    let o = run(&["static", "--model", model.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sol = parse_static_report(&stdout(&o)).unwrap();
    let (e, l, iy, a) = (210e6, 2.0, 4e-2, 0.01);
    let tip = sol.node_displacement(2);
    assert!((tip[2] - (-100.0 * l * l * l / (3.0 * e * iy))).abs() < 1e-12);
    assert!((tip[0] - (-1000.0 * l / (e * a))).abs() < 1e-14);
    let r = sol.node_reaction(0);
    assert!((r[0] - 1000.0).abs() < 1e-8 && (r[2] - 100.0).abs() < 1e-8);
}

#[test]
fn static_report_round_trips_bit_exact() {
    let model = data("portal_frame.json");
    let first = stdout(&run(&["static", "--model", model.to_str().unwrap()]));
    let second = stdout(&run(&["static", "--model", model.to_str().unwrap()]));
    assert_eq!(first, second);
    let report: StaticReport = serde_json::from_str(&first).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, first);
    let sol = report.to_solution();
    let reparsed = parse_static_report(&again).unwrap();
    assert_eq!(sol.displacements, reparsed.displacements);
    assert_eq!(sol.reactions, reparsed.reactions);
}

#[test]
fn buckle_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("buckle.json");
    let model = data("portal_frame.json");
    let o = run(&[
        "buckle",
        "--model",
        model.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let sol = parse_buckling_report(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(sol.lambda_cr > 0.0);
    assert_eq!(sol.mode.amax(), 1.0);
    assert_eq!(sol.mode.len(), 24);
}

#[test]
fn unloaded_model_has_no_buckling_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(data("cantilever.json")).unwrap()).unwrap();
    v["loads"] = serde_json::json!({});
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["buckle", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "no-buckling-mode");
    assert_eq!(err["exit_code"], 3);
}

#[test]
fn malformed_model_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"nodes\": [[0, 0]]}").unwrap();
    let o = run(&["static", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "parse-error");
}

#[test]
fn unsupported_model_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("free.json");
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(data("cantilever.json")).unwrap()).unwrap();
    v["boundary"] = serde_json::json!({});
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["static", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "invalid-model");
    assert!(err["message"].as_str().unwrap().contains("unconstrained"));
}

#[test]
fn missing_file_is_io_error() {
    let o = run(&["static", "--model", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn bad_flags_exit_with_input_code() {
    assert_eq!(run(&["static"]).status.code(), Some(2));
    assert_eq!(
        run(&["mesh2d", "--kind", "hex20", "--nx", "1", "--ny", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let model = data("cantilever.json");
    let o = run(&[
        "static",
        "--model",
        model.to_str().unwrap(),
        "--condition-limit",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mesh2d_quad8_single_cell() {
    let o = run(&["mesh2d", "--kind", "quad8", "--nx", "1", "--ny", "1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coords"].as_array().unwrap().len(), 8);
    assert_eq!(v["connectivity"][0].as_array().unwrap().len(), 8);
    let o = run(&[
        "mesh2d", "--kind", "tri6", "--nx", "3", "--ny", "2", "--x-lo", "-1", "--x-hi", "2",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coords"].as_array().unwrap().len(), 35);
    assert_eq!(v["connectivity"].as_array().unwrap().len(), 12);
    assert_eq!(v["coords"][0][0], -1.0);
}

#[test]
fn mesh1d_nodes() {
    let o = run(&[
        "mesh1d",
        "--x-min",
        "-2",
        "--x-max",
        "3",
        "--num-elements",
        "5",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let xs: Vec<f64> = v["node_coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(xs, vec![-2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
}

#[test]
fn element_matrices() {
    let o = run(&[
        "element", "--matrix", "elastic", "--E", "200", "--nu", "0.3", "--A", "1", "--L", "2",
        "--Iy", "1", "--Iz", "1", "--J", "1",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matrix"], "elastic");
    assert_eq!(v["values"][0][0], 100.0);
    assert_eq!(v["values"][0][6], -100.0);

    let o = run(&[
        "element",
        "--matrix",
        "geometric",
        "--L",
        "1",
        "--A",
        "1",
        "--I-rho",
        "1",
        "--fx2",
        "-1",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][1][1], -1.2);

    let o = run(&[
        "element",
        "--matrix",
        "transform",
        "--xi",
        "0,0,0",
        "--xj",
        "0,-2,0",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"][0][1], -1.0);

    let o = run(&["element", "--matrix", "elastic", "--E", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn static_csv_output() {
    let model = data("cantilever.json");
    let o = run(&[
        "static",
        "--model",
        model.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.len(), 13);
    assert_eq!(&headers[0], "node");
    assert_eq!(reader.records().count(), 3);
    let o = run(&[
        "buckle",
        "--model",
        model.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
