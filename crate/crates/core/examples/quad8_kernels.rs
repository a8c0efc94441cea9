//! Quad8 kernels on a skewed element: edge loads, gradients, and the
//! integral of a gradient.

use femkit::fem2d::{
    quad8_edge_distributed_load, quad8_integral_of_gradient, quad8_physical_gradient,
    quad_quadrature, tri_quadrature,
};

fn main() -> femkit::Result<()> {
    let corners = [[0.0, 0.0], [2.0, 0.2], [2.3, 1.5], [0.1, 1.0]];
    let mid = |a: [f64; 2], b: [f64; 2]| [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    let coords = [
        corners[0],
        corners[1],
        corners[2],
        corners[3],
        mid(corners[0], corners[1]),
        mid(corners[1], corners[2]),
        mid(corners[2], corners[3]),
        mid(corners[3], corners[0]),
    ];

    let f = quad8_edge_distributed_load(1, &coords, [0.0, -10.0], 3)?;
    println!("edge load on face 1 (fx, fy per node):");
    for node in 0..8 {
        println!(
            "  node {node}: ({:+.4}, {:+.4})",
            f[2 * node],
            f[2 * node + 1]
        );
    }

    // u = 1 + 3x - 2y has the same gradient everywhere
    let values = coords.map(|[x, y]| 1.0 + 3.0 * x - 2.0 * y);
    let grads = quad8_physical_gradient(&coords, &values, &[[0.0, 0.0], [0.5, -0.5]])?;
    println!("gradients: {grads:?}");
    println!(
        "integral of gradient: {:?}",
        quad8_integral_of_gradient(&coords, &values, 4)?
    );

    let tri = tri_quadrature(3)?;
    let square = quad_quadrature(9)?;
    println!("triangle area   = {}", tri.integrate(|_, _| 1.0));
    println!(
        "int x^4 y^4 on square = {} (exact {})",
        square.integrate(|x, y| x.powi(4) * y.powi(4)),
        4.0 / 25.0
    );
    Ok(())
}
