//! Reference-element kernels for quadratic triangles (Tri6) and serendipity
//! quadrilaterals (Quad8): quadrature, shape functions, structured meshes,
//! edge loads and gradient mapping.

pub mod kernels;
pub mod mesh;
pub mod quadrature;
pub mod shape;

pub use kernels::{
    quad8_edge_distributed_load, quad8_integral_of_gradient, quad8_physical_gradient, QUAD8_FACES,
};
pub use mesh::{quad8_mesh_rectangle, tri6_mesh_rectangle, ElementKind, Mesh2D};
pub use quadrature::{gauss_legendre_1d, quad_quadrature, tri_quadrature, QuadratureRule};
pub use shape::{
    quad8_shape, quad8_shape_at, tri6_shape, tri6_shape_at, ShapeEval, QUAD8_NODES, TRI6_NODES,
};
