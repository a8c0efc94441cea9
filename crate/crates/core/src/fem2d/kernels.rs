//! Quad8 element kernels: edge loads, physical gradients, gradient integrals.

use nalgebra::{Matrix2, SVector, Vector2};

use crate::error::{FemError, Result};

use super::quadrature::{gauss_legendre_1d, quad_quadrature};
use super::shape::{quad8_shape_at, ShapeEval};

/// `|det J|` at or below this fraction of the bounding-box area is singular.
pub const DEGENERATE_JACOBIAN_RATIO: f64 = 1e-12;

/// Local node ids `(start corner, midside, end corner)` of each Quad8 face.
///
/// Face 0 is `η = −1`, face 1 is `ξ = 1`, face 2 is `η = 1`, face 3 is `ξ = −1`.
pub const QUAD8_FACES: [[usize; 3]; 4] = [[0, 4, 1], [1, 5, 2], [2, 6, 3], [3, 7, 0]];

/// Equivalent nodal loads of a constant traction on one Quad8 edge.
///
/// Returns the full element vector `[fx1, fy1, fx2, fy2, …, fx8, fy8]` with
/// zeros at nodes off the loaded edge. The edge is integrated with
/// `num_gauss` Gauss points along its quadratic parametrization.
pub fn quad8_edge_distributed_load(
    face: usize,
    node_coords: &[[f64; 2]; 8],
    traction: [f64; 2],
    num_gauss: usize,
) -> Result<SVector<f64, 16>> {
    let nodes = QUAD8_FACES
        .get(face)
        .ok_or_else(|| FemError::InvalidArgument(format!("face id {face} out of range 0..=3")))?;
    let (points, weights) = gauss_legendre_1d(num_gauss)?;
    let mut out = SVector::<f64, 16>::zeros();
    for (s, w) in points.into_iter().zip(weights) {
        // quadratic edge functions for (start, mid, end)
        let n = [0.5 * s * (s - 1.0), 1.0 - s * s, 0.5 * s * (s + 1.0)];
        let dn = [s - 0.5, -2.0 * s, s + 0.5];
        let mut tangent = [0.0; 2];
        for (k, &node) in nodes.iter().enumerate() {
            tangent[0] += dn[k] * node_coords[node][0];
            tangent[1] += dn[k] * node_coords[node][1];
        }
        let ds = tangent[0].hypot(tangent[1]);
        for (k, &node) in nodes.iter().enumerate() {
            out[2 * node] += w * n[k] * traction[0] * ds;
            out[2 * node + 1] += w * n[k] * traction[1] * ds;
        }
    }
    Ok(out)
}

fn bounding_box_area(node_coords: &[[f64; 2]; 8]) -> f64 {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in node_coords {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    (hi[0] - lo[0]) * (hi[1] - lo[1])
}

/// Jacobian `J[a][b] = ∂x_b/∂ξ_a` of the isoparametric map at one point.
fn jacobian(shape: &ShapeEval, node_coords: &[[f64; 2]; 8]) -> Matrix2<f64> {
    let mut j = Matrix2::zeros();
    for (g, x) in shape.gradients.iter().zip(node_coords) {
        for a in 0..2 {
            for b in 0..2 {
                j[(a, b)] += g[a] * x[b];
            }
        }
    }
    j
}

struct PointGradient {
    grad: Vector2<f64>,
    det: f64,
}

fn gradient_at(
    node_coords: &[[f64; 2]; 8],
    node_values: &[f64; 8],
    xi: f64,
    eta: f64,
    threshold: f64,
) -> Result<PointGradient> {
    let shape = quad8_shape_at(xi, eta);
    let j = jacobian(&shape, node_coords);
    let det = j.determinant();
    if det.is_nan() || det.abs() <= threshold {
        return Err(FemError::DegenerateGeometry { det, xi, eta });
    }
    let mut ref_grad = Vector2::zeros();
    for (g, u) in shape.gradients.iter().zip(node_values) {
        ref_grad[0] += g[0] * u;
        ref_grad[1] += g[1] * u;
    }
    // ∇_ξ u = J ∇_x u
    let inv = j
        .try_inverse()
        .ok_or(FemError::DegenerateGeometry { det, xi, eta })?;
    Ok(PointGradient {
        grad: inv * ref_grad,
        det,
    })
}

/// Physical-space gradient of the interpolated field at each reference point.
pub fn quad8_physical_gradient(
    node_coords: &[[f64; 2]; 8],
    node_values: &[f64; 8],
    points: &[[f64; 2]],
) -> Result<Vec<[f64; 2]>> {
    let threshold = DEGENERATE_JACOBIAN_RATIO * bounding_box_area(node_coords);
    points
        .iter()
        .map(|&[xi, eta]| {
            gradient_at(node_coords, node_values, xi, eta, threshold)
                .map(|p| [p.grad[0], p.grad[1]])
        })
        .collect()
}

/// `∫_Ω ∇u dΩ` by tensor Gauss quadrature with 1, 4 or 9 points.
pub fn quad8_integral_of_gradient(
    node_coords: &[[f64; 2]; 8],
    node_values: &[f64; 8],
    num_gauss: usize,
) -> Result<[f64; 2]> {
    let rule = quad_quadrature(num_gauss)?;
    let threshold = DEGENERATE_JACOBIAN_RATIO * bounding_box_area(node_coords);
    let mut total = Vector2::zeros();
    for ([xi, eta], w) in rule.iter() {
        let p = gradient_at(node_coords, node_values, xi, eta, threshold)?;
        total += p.grad * (w * p.det.abs());
    }
    Ok([total[0], total[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem2d::shape::QUAD8_NODES;

    fn unit_square() -> [[f64; 2]; 8] {
        QUAD8_NODES.map(|[x, y]| [0.5 * (x + 1.0), 0.5 * (y + 1.0)])
    }

    #[test]
    fn edge_load_straight_edge() {
        let coords = unit_square().map(|[x, y]| [3.0 * x, 3.0 * y]);
        let t = [2.0, -1.0];
        let f = quad8_edge_distributed_load(1, &coords, t, 2).unwrap();
        let le = 3.0;
        for (node, share) in [(1, le / 6.0), (5, 2.0 * le / 3.0), (2, le / 6.0)] {
            assert!((f[2 * node] - t[0] * share).abs() < 1e-12);
            assert!((f[2 * node + 1] - t[1] * share).abs() < 1e-12);
        }
        for node in [0, 3, 4, 6, 7] {
            assert_eq!((f[2 * node], f[2 * node + 1]), (0.0, 0.0));
        }
    }

    #[test]
    fn edge_load_zero_and_bad_face() {
        let f = quad8_edge_distributed_load(0, &unit_square(), [0.0, 0.0], 3).unwrap();
        assert_eq!(f, SVector::<f64, 16>::zeros());
        assert!(quad8_edge_distributed_load(4, &unit_square(), [1.0, 0.0], 2).is_err());
        assert!(quad8_edge_distributed_load(0, &unit_square(), [1.0, 0.0], 4).is_err());
    }

    #[test]
    fn constant_field_has_zero_gradient() {
        let g = quad8_physical_gradient(&unit_square(), &[3.0; 8], &[[0.2, -0.4]]).unwrap();
        assert!(g[0][0].abs() < 1e-14 && g[0][1].abs() < 1e-14);
        let i = quad8_integral_of_gradient(&unit_square(), &[3.0; 8], 4).unwrap();
        assert!(i[0].abs() < 1e-14 && i[1].abs() < 1e-14);
    }

    #[test]
    fn affine_integral_on_unit_square() {
        let c = unit_square();
        let u = c.map(|[x, y]| 1.0 + 2.0 * x - 3.0 * y);
        let i = quad8_integral_of_gradient(&c, &u, 1).unwrap();
        assert!((i[0] - 2.0).abs() < 1e-14 && (i[1] + 3.0).abs() < 1e-14);
    }

    #[test]
    fn collapsed_element_is_degenerate() {
        let mut c = unit_square();
        // fold the element onto a line
        for p in c.iter_mut() {
            p[1] = 0.0;
        }
        let err = quad8_physical_gradient(&c, &[0.0; 8], &[[0.0, 0.0]]);
        assert!(matches!(err, Err(FemError::DegenerateGeometry { .. })));
    }
}
