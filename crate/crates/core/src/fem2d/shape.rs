//! Quadratic shape functions on the reference triangle and square.
//!
//! Node order for both families: corners counterclockwise, then midside
//! nodes counterclockwise starting on the edge between corners 1 and 2.
//!
//! Tri6 on `(0,0), (1,0), (0,1)`:
//! `1 (0,0)  2 (1,0)  3 (0,1)  4 (½,0)  5 (½,½)  6 (0,½)`.
//!
//! Quad8 on `[−1, 1]²`:
//! `1 (−1,−1)  2 (1,−1)  3 (1,1)  4 (−1,1)  5 (0,−1)  6 (1,0)  7 (0,1)  8 (−1,0)`.
//!
//! Evaluation outside the reference element is allowed and extrapolates.

/// Shape-function values and reference gradients `[∂N/∂ξ, ∂N/∂η]` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeEval {
    pub values: Vec<f64>,
    pub gradients: Vec<[f64; 2]>,
}

pub const TRI6_NODES: [[f64; 2]; 6] = [
    [0.0, 0.0],
    [1.0, 0.0],
    [0.0, 1.0],
    [0.5, 0.0],
    [0.5, 0.5],
    [0.0, 0.5],
];

pub const QUAD8_NODES: [[f64; 2]; 8] = [
    [-1.0, -1.0],
    [1.0, -1.0],
    [1.0, 1.0],
    [-1.0, 1.0],
    [0.0, -1.0],
    [1.0, 0.0],
    [0.0, 1.0],
    [-1.0, 0.0],
];

pub fn tri6_shape_at(xi: f64, eta: f64) -> ShapeEval {
    let l1 = 1.0 - xi - eta;
    let (l2, l3) = (xi, eta);
    // barycentric derivatives: dL1 = (−1, −1), dL2 = (1, 0), dL3 = (0, 1)
    let values = vec![
        l1 * (2.0 * l1 - 1.0),
        l2 * (2.0 * l2 - 1.0),
        l3 * (2.0 * l3 - 1.0),
        4.0 * l1 * l2,
        4.0 * l2 * l3,
        4.0 * l3 * l1,
    ];
    let c1 = 4.0 * l1 - 1.0;
    let gradients = vec![
        [-c1, -c1],
        [4.0 * l2 - 1.0, 0.0],
        [0.0, 4.0 * l3 - 1.0],
        [4.0 * (l1 - l2), -4.0 * l2],
        [4.0 * l3, 4.0 * l2],
        [-4.0 * l3, 4.0 * (l1 - l3)],
    ];
    ShapeEval { values, gradients }
}

pub fn quad8_shape_at(xi: f64, eta: f64) -> ShapeEval {
    let mut values = Vec::with_capacity(8);
    let mut gradients = Vec::with_capacity(8);
    for &[xn, yn] in &QUAD8_NODES {
        let (n, dxi, deta) = if xn != 0.0 && yn != 0.0 {
            let (a, b) = (1.0 + xi * xn, 1.0 + eta * yn);
            let c = xi * xn + eta * yn - 1.0;
            (
                0.25 * a * b * c,
                0.25 * xn * b * (c + a),
                0.25 * yn * a * (c + b),
            )
        } else if xn == 0.0 {
            let b = 1.0 + eta * yn;
            (
                0.5 * (1.0 - xi * xi) * b,
                -xi * b,
                0.5 * (1.0 - xi * xi) * yn,
            )
        } else {
            let a = 1.0 + xi * xn;
            (
                0.5 * a * (1.0 - eta * eta),
                0.5 * xn * (1.0 - eta * eta),
                -eta * a,
            )
        };
        values.push(n);
        gradients.push([dxi, deta]);
    }
    ShapeEval { values, gradients }
}

pub fn tri6_shape(points: &[[f64; 2]]) -> Vec<ShapeEval> {
    points.iter().map(|&[x, y]| tri6_shape_at(x, y)).collect()
}

pub fn quad8_shape(points: &[[f64; 2]]) -> Vec<ShapeEval> {
    points.iter().map(|&[x, y]| quad8_shape_at(x, y)).collect()
}
