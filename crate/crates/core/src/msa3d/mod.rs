//! 3D matrix structural analysis with Euler–Bernoulli frame elements.

pub mod assembly;
pub mod elements;
pub mod solvers;

pub use assembly::{
    assemble_global_elastic_stiffness, assemble_global_geometric_stiffness, assemble_global_loads,
    element_global_elastic_stiffness, gather_element_displacements, partition_dofs,
};
pub use elements::{
    check_local_z, default_reference_axis, direction_cosines, element_length,
    local_elastic_stiffness_3d, local_element_loads, local_geometric_stiffness_3d,
    section_elastic_stiffness, transformation_matrix_3d, GeometricLoads, Matrix12, Vector12,
};
pub use solvers::{
    elastic_critical_load, solve_buckling_eigen, solve_linear_elastic_frame,
    solve_partitioned_linear, SolverSettings,
};
