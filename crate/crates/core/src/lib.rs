//! Finite-element kernels and 3D matrix structural analysis.
//!
//! - [`model`]: frame model types, DOF numbering and validation
//! - [`fem1d`]: 1D bar meshing and linear-elastic solve
//! - [`fem2d`]: Tri6/Quad8 quadrature, shape functions, meshes and element kernels
//! - [`msa3d`]: 3D beam element matrices, global assembly, static and buckling solves
//! - [`cli`]: the `femkit` command-line front end

pub mod cli;
pub mod error;
pub mod fem1d;
pub mod fem2d;
pub mod model;
pub mod msa3d;

pub use error::{FemError, Result};
pub use model::{
    global_dof_index, validate_model, BucklingSolution, DofPartition, FrameElement, FrameModel,
    Point3, Section, StaticSolution, Support, ValidationReport, Violation,
};
pub use msa3d::SolverSettings;
