//! Critical load of a cantilever column as the mesh is refined.

use std::f64::consts::PI;

use femkit::model::{FrameElement, FrameModel, Point3, Section, Support};
use femkit::msa3d::{elastic_critical_load, SolverSettings};

fn column(n: usize, height: f64, section: Section) -> FrameModel {
    let nodes = (0..=n)
        .map(|k| Point3::new(0.0, 0.0, height * k as f64 / n as f64))
        .collect();
    let mut m = FrameModel::new(nodes);
    for k in 0..n {
        m.add_element(FrameElement::new(k, k + 1, section));
    }
    m.support(0, Support::fixed())
        .load(n, [0.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
    m
}

fn main() -> femkit::Result<()> {
    let section = Section::new(200e9, 0.3, 2e-3, 4e-6, 9e-6, 2e-5);
    let height = 2.5;
    let euler = PI * PI * section.e * section.iy.min(section.iz) / (4.0 * height * height);
    println!("Euler load: {euler:.6e}");
    for n in [1, 2, 4, 8, 16] {
        let b = elastic_critical_load(&column(n, height, section), &SolverSettings::default())?;
        println!(
            "{n:>3} elements: lambda_cr = {:.6e}  rel. error = {:+.2e}",
            b.lambda_cr,
            (b.lambda_cr - euler) / euler
        );
    }
    Ok(())
}
