//! Loads a frame model from JSON, validates it, and prints the static and
//! buckling results.
//!
//! Run with `cargo run --example model_json -- path/to/model.json`; without
//! an argument the bundled portal frame is used.

use std::path::PathBuf;

use femkit::model::{validate_model, FrameModel};
use femkit::msa3d::{elastic_critical_load, solve_linear_elastic_frame, SolverSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/portal_frame.json")
        });
    let model = FrameModel::from_json(&std::fs::read_to_string(&path)?)?;
    validate_model(&model).into_result()?;

    let settings = SolverSettings::default();
    let stat = solve_linear_elastic_frame(&model, &settings)?;
    for node in 0..model.num_nodes() {
        println!("node {node}: u = {:?}", stat.node_displacement(node));
        println!("        r = {:?}", stat.node_reaction(node));
    }
    match elastic_critical_load(&model, &settings) {
        Ok(b) => println!("lambda_cr = {:.6}", b.lambda_cr),
        Err(e) => println!("no critical load: {e}"),
    }
    Ok(())
}
