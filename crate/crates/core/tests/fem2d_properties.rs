use femkit::fem2d::*;
use proptest::prelude::*;

fn quad_from_corners(c: [[f64; 2]; 4]) -> [[f64; 2]; 8] {
    let mid = |a: [f64; 2], b: [f64; 2]| [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    [
        c[0],
        c[1],
        c[2],
        c[3],
        mid(c[0], c[1]),
        mid(c[1], c[2]),
        mid(c[2], c[3]),
        mid(c[3], c[0]),
    ]
}

fn polygon_area(c: &[[f64; 2]]) -> f64 {
    let n = c.len();
    0.5 * (0..n)
        .map(|k| c[k][0] * c[(k + 1) % n][1] - c[(k + 1) % n][0] * c[k][1])
        .sum::<f64>()
}

fn perturbed_corners() -> impl Strategy<Value = [[f64; 2]; 4]> {
    prop::array::uniform8(-0.25f64..0.25).prop_map(|d| {
        [
            [d[0], d[1]],
            [1.0 + d[2], d[3]],
            [1.0 + d[4], 1.0 + d[5]],
            [d[6], 1.0 + d[7]],
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ∫∇u = (b, c)·area for affine u on a straight-sided quad
    #[test]
    fn gradient_integral_of_affine_field(
        corners in perturbed_corners(),
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
        n in prop::sample::select(vec![4usize, 9]),
    ) {
        let coords = quad_from_corners(corners);
        let values = coords.map(|[x, y]| 0.7 + b * x + c * y);
        let area = polygon_area(&corners);
        let got = quad8_integral_of_gradient(&coords, &values, n).unwrap();
        prop_assert!((got[0] - b * area).abs() <= 1e-12 * (1.0 + b.abs()));
        prop_assert!((got[1] - c * area).abs() <= 1e-12 * (1.0 + c.abs()));
    }

    // nodal loads of a constant traction sum to traction × edge length
    #[test]
    fn edge_load_total(
        corners in perturbed_corners(),
        face in 0usize..4,
        tx in -5.0f64..5.0,
        ty in -5.0f64..5.0,
        n in 2usize..=3,
    ) {
        let coords = quad_from_corners(corners);
        let f = quad8_edge_distributed_load(face, &coords, [tx, ty], n).unwrap();
        let [a, _, b] = QUAD8_FACES[face];
        let len = (coords[b][0] - coords[a][0]).hypot(coords[b][1] - coords[a][1]);
        let sx: f64 = (0..8).map(|k| f[2 * k]).sum();
        let sy: f64 = (0..8).map(|k| f[2 * k + 1]).sum();
        prop_assert!((sx - tx * len).abs() <= 1e-12 * (1.0 + tx.abs() * len));
        prop_assert!((sy - ty * len).abs() <= 1e-12 * (1.0 + ty.abs() * len));
    }

    // quadratic fields are reproduced by Quad8 on an affine map
    #[test]
    fn quadratic_gradient_on_parallelogram(
        shear in -0.5f64..0.5,
        sx in 0.5f64..2.0,
        sy in 0.5f64..2.0,
        k in prop::array::uniform3(-2.0f64..2.0),
        xi in -1.0f64..1.0,
        eta in -1.0f64..1.0,
    ) {
        let map = |[u, v]: [f64; 2]| [sx * u + shear * v, sy * v];
        let coords = QUAD8_NODES.map(map);
        let field = |[x, y]: [f64; 2]| k[0] * x * x + k[1] * x * y + k[2] * y * y;
        let values = coords.map(field);
        let g = quad8_physical_gradient(&coords, &values, &[[xi, eta]]).unwrap()[0];
        let [x, y] = map([xi, eta]);
        let exact = [2.0 * k[0] * x + k[1] * y, k[1] * x + 2.0 * k[2] * y];
        prop_assert!((g[0] - exact[0]).abs() <= 1e-11 && (g[1] - exact[1]).abs() <= 1e-11);
    }

    #[test]
    fn mesh_covers_rectangle(
        x_lo in -5.0f64..5.0,
        y_lo in -5.0f64..5.0,
        w in 0.1f64..10.0,
        h in 0.1f64..10.0,
        nx in 1usize..6,
        ny in 1usize..6,
    ) {
        for mesh in [
            tri6_mesh_rectangle(x_lo, y_lo, x_lo + w, y_lo + h, nx, ny).unwrap(),
            quad8_mesh_rectangle(x_lo, y_lo, x_lo + w, y_lo + h, nx, ny).unwrap(),
        ] {
            let total: f64 = (0..mesh.connectivity.len()).map(|e| mesh.corner_signed_area(e)).sum();
            prop_assert!((total - w * h).abs() <= 1e-10 * w * h);
        }
    }
}

#[test]
fn shape_function_counts_match_rules() {
    for n in [1, 3, 4] {
        let rule = tri_quadrature(n).unwrap();
        let shapes = tri6_shape(&rule.points);
        assert_eq!(shapes.len(), n);
        assert!((rule.weights.iter().sum::<f64>() - 0.5).abs() < 1e-15);
    }
    for n in [1, 4, 9] {
        let rule = quad_quadrature(n).unwrap();
        assert_eq!(quad8_shape(&rule.points).len(), n);
        assert!((rule.weights.iter().sum::<f64>() - 4.0).abs() < 1e-14);
    }
    assert!(tri_quadrature(2).is_err());
    assert!(quad_quadrature(3).is_err());
}
