//! Tip deflection of a cantilever under a transverse end load, compared
//! with the beam-theory value `F L^3 / (3 E I)`.

use femkit::model::{FrameElement, FrameModel, Point3, Section, Support};
use femkit::msa3d::{solve_linear_elastic_frame, SolverSettings};

fn main() -> femkit::Result<()> {
    let section = Section::new(210e9, 0.3, 4e-3, 2e-5, 8e-6, 1e-6);
    let (length, load, n) = (3.0, -5e3, 6);

    let nodes = (0..=n)
        .map(|k| Point3::new(length * k as f64 / n as f64, 0.0, 0.0))
        .collect();
    let mut model = FrameModel::new(nodes);
    for k in 0..n {
        model.add_element(FrameElement::new(k, k + 1, section));
    }
    model
        .support(0, Support::fixed())
        .load(n, [0.0, 0.0, load, 0.0, 0.0, 0.0]);

    let solution = solve_linear_elastic_frame(&model, &SolverSettings::default())?;
    let tip = solution.node_displacement(n);
    let beam_theory = load * length.powi(3) / (3.0 * section.e * section.iy);
    println!("tip w        = {:.6e}", tip[2]);
    println!("F L^3 / 3EI  = {beam_theory:.6e}");
    println!(
        "base reaction Fz = {:.3}, My = {:.3}",
        solution.node_reaction(0)[2],
        solution.node_reaction(0)[4]
    );
    Ok(())
}
