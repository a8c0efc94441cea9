//! Stepped bar under self-weight and an end load.

use std::collections::BTreeMap;

use femkit::fem1d::{generate_uniform_1d_mesh, solve_1d_linear_elastic, BarRegion1D};

fn main() -> femkit::Result<()> {
    let mesh = generate_uniform_1d_mesh(0.0, 2.0, 8)?;
    let regions = [
        BarRegion1D {
            x_start: 0.0,
            x_end: 1.0,
            e: 70e9,
            a: 2e-4,
            body_force: -5.0,
        },
        BarRegion1D {
            x_start: 1.0,
            x_end: 2.0,
            e: 70e9,
            a: 1e-4,
            body_force: -2.5,
        },
    ];
    let dirichlet = BTreeMap::from([(0, 0.0)]);
    let neumann = BTreeMap::from([(mesh.num_elements(), 1e3)]);
    let u = solve_1d_linear_elastic(&mesh, &regions, &dirichlet, &neumann)?;
    for (x, u) in mesh.node_coords.iter().zip(u.iter()) {
        println!("x = {x:5.2}  u = {u:+.6e}");
    }
    Ok(())
}
