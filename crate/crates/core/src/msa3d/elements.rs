//! Element-level routines for the 3D Euler–Bernoulli beam.
//!
//! Local DOF order is `[u1, v1, w1, θx1, θy1, θz1, u2, v2, w2, θx2, θy2, θz2]`
//! and local end forces use the matching order
//! `[Fx1, Fy1, Fz1, Mx1, My1, Mz1, Fx2, Fy2, Fz2, Mx2, My2, Mz2]`.
//!
//! The transformation `Γ` maps global to local: `u_local = Γ · u_global`.
//! Element matrices are therefore globalized as `Γᵀ · k_local · Γ`, and
//! displacements must never be localized with `Γᵀ`.

use std::ops::{Add, Mul};

use nalgebra::{Matrix3, SMatrix, SVector, Vector3};

use crate::error::{FemError, Result};
use crate::model::{Point3, Section};

pub type Matrix12 = SMatrix<f64, 12, 12>;
pub type Vector12 = SVector<f64, 12>;

/// Element lengths at or below this are rejected.
pub const ZERO_LENGTH_TOL: f64 = 0.0;
/// Allowed deviation of a user reference vector from unit length.
pub const UNIT_LENGTH_TOL: f64 = 1e-8;
/// `|a · b| > 1 - PARALLEL_TOL` counts as parallel.
pub const PARALLEL_TOL: f64 = 1e-8;

/// 12×12 local elastic stiffness of a 3D Euler–Bernoulli beam.
///
/// Torsion uses `G = E / (2(1 + ν))`. Bending about local z couples
/// `{v1, θz1, v2, θz2}`; bending about local y couples `{w1, θy1, w2, θy2}`
/// with the opposite sign on the rotation coupling terms.
pub fn local_elastic_stiffness_3d(
    e: f64,
    nu: f64,
    a: f64,
    l: f64,
    iy: f64,
    iz: f64,
    j: f64,
) -> Result<Matrix12> {
    check_length(l)?;
    let mut k = Matrix12::zeros();

    let axial = e * a / l;
    k[(0, 0)] = axial;
    k[(0, 6)] = -axial;
    k[(6, 0)] = -axial;
    k[(6, 6)] = axial;

    let torsion = e * j / (2.0 * (1.0 + nu) * l);
    k[(3, 3)] = torsion;
    k[(3, 9)] = -torsion;
    k[(9, 3)] = -torsion;
    k[(9, 9)] = torsion;

    // bending about local z: v, θz
    let (b1, b2, b3, b4) = bending_terms(e * iz, l);
    set_sym(&mut k, 1, 1, b1);
    set_sym(&mut k, 7, 7, b1);
    set_sym(&mut k, 1, 7, -b1);
    set_sym(&mut k, 1, 5, b2);
    set_sym(&mut k, 1, 11, b2);
    set_sym(&mut k, 5, 7, -b2);
    set_sym(&mut k, 7, 11, -b2);
    set_sym(&mut k, 5, 5, b3);
    set_sym(&mut k, 11, 11, b3);
    set_sym(&mut k, 5, 11, b4);

    // bending about local y: w, θy
    let (b1, b2, b3, b4) = bending_terms(e * iy, l);
    set_sym(&mut k, 2, 2, b1);
    set_sym(&mut k, 8, 8, b1);
    set_sym(&mut k, 2, 8, -b1);
    set_sym(&mut k, 2, 4, -b2);
    set_sym(&mut k, 2, 10, -b2);
    set_sym(&mut k, 4, 8, b2);
    set_sym(&mut k, 8, 10, b2);
    set_sym(&mut k, 4, 4, b3);
    set_sym(&mut k, 10, 10, b3);
    set_sym(&mut k, 4, 10, b4);

    Ok(k)
}

/// [`local_elastic_stiffness_3d`] for a [`Section`] of length `l`.
pub fn section_elastic_stiffness(section: &Section, l: f64) -> Result<Matrix12> {
    local_elastic_stiffness_3d(
        section.e, section.nu, section.a, l, section.iy, section.iz, section.j,
    )
}

fn bending_terms(ei: f64, l: f64) -> (f64, f64, f64, f64) {
    (
        12.0 * ei / l.powi(3),
        6.0 * ei / l.powi(2),
        4.0 * ei / l,
        2.0 * ei / l,
    )
}

fn set_sym(k: &mut Matrix12, r: usize, c: usize, v: f64) {
    k[(r, c)] = v;
    k[(c, r)] = v;
}

fn check_length(l: f64) -> Result<()> {
    if l.is_finite() && l > ZERO_LENGTH_TOL {
        Ok(())
    } else {
        Err(FemError::DegenerateElement(format!(
            "element length must be positive (got {l})"
        )))
    }
}

/// End forces that drive the geometric stiffness: axial force and torque at
/// node 2 and the bending moments at both ends (tension positive).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeometricLoads {
    pub fx2: f64,
    pub mx2: f64,
    pub my1: f64,
    pub mz1: f64,
    pub my2: f64,
    pub mz2: f64,
}

impl GeometricLoads {
    pub fn axial(fx2: f64) -> Self {
        GeometricLoads {
            fx2,
            ..Default::default()
        }
    }

    /// Picks the driving components out of a local end-force vector.
    pub fn from_end_forces(f: &Vector12) -> Self {
        GeometricLoads {
            fx2: f[6],
            mx2: f[9],
            my1: f[4],
            mz1: f[5],
            my2: f[10],
            mz2: f[11],
        }
    }
}

impl Add for GeometricLoads {
    type Output = GeometricLoads;

    fn add(self, o: GeometricLoads) -> GeometricLoads {
        GeometricLoads {
            fx2: self.fx2 + o.fx2,
            mx2: self.mx2 + o.mx2,
            my1: self.my1 + o.my1,
            mz1: self.mz1 + o.mz1,
            my2: self.my2 + o.my2,
            mz2: self.mz2 + o.mz2,
        }
    }
}

impl Mul<f64> for GeometricLoads {
    type Output = GeometricLoads;

    fn mul(self, c: f64) -> GeometricLoads {
        GeometricLoads {
            fx2: self.fx2 * c,
            mx2: self.mx2 * c,
            my1: self.my1 * c,
            mz1: self.mz1 * c,
            my2: self.my2 * c,
            mz2: self.mz2 * c,
        }
    }
}

/// 12×12 local geometric (initial-stress) stiffness with torsion–bending
/// coupling and the Wagner term `Fx2 · I_rho / (A · L)`.
///
/// The upper triangle is filled first, mirrored by adding the transpose, and
/// the diagonal is written last, so the result is exactly symmetric.
pub fn local_geometric_stiffness_3d(
    l: f64,
    a: f64,
    i_rho: f64,
    loads: &GeometricLoads,
) -> Result<Matrix12> {
    check_length(l)?;
    if !(a.is_finite() && a > 0.0) {
        return Err(FemError::DegenerateElement(format!(
            "cross-sectional area must be positive (got {a})"
        )));
    }
    if !(i_rho.is_finite() && i_rho > 0.0) {
        return Err(FemError::InvalidArgument(format!(
            "I_rho must be positive (got {i_rho})"
        )));
    }
    let GeometricLoads {
        fx2,
        mx2,
        my1,
        mz1,
        my2,
        mz2,
    } = *loads;

    let mut k = Matrix12::zeros();
    k[(0, 6)] = -fx2 / l;
    k[(1, 3)] = my1 / l;
    k[(1, 4)] = mx2 / l;
    k[(1, 5)] = fx2 / 10.0;
    k[(1, 7)] = -6.0 * fx2 / (5.0 * l);
    k[(1, 9)] = my2 / l;
    k[(1, 10)] = -mx2 / l;
    k[(1, 11)] = fx2 / 10.0;
    k[(2, 3)] = mz1 / l;
    k[(2, 4)] = -fx2 / 10.0;
    k[(2, 5)] = mx2 / l;
    k[(2, 8)] = -6.0 * fx2 / (5.0 * l);
    k[(2, 9)] = mz2 / l;
    k[(2, 10)] = -fx2 / 10.0;
    k[(2, 11)] = -mx2 / l;
    k[(3, 4)] = -(2.0 * mz1 - mz2) / 6.0;
    k[(3, 5)] = (2.0 * my1 - my2) / 6.0;
    k[(3, 7)] = -my1 / l;
    k[(3, 8)] = -mz1 / l;
    k[(3, 9)] = -fx2 * i_rho / (a * l);
    k[(3, 10)] = -(mz1 + mz2) / 6.0;
    k[(3, 11)] = (my1 + my2) / 6.0;
    k[(4, 7)] = -mx2 / l;
    k[(4, 8)] = fx2 / 10.0;
    k[(4, 9)] = -(mz1 + mz2) / 6.0;
    k[(4, 10)] = -fx2 * l / 30.0;
    k[(4, 11)] = mx2 / 2.0;
    k[(5, 7)] = -fx2 / 10.0;
    k[(5, 8)] = -mx2 / l;
    k[(5, 9)] = (my1 + my2) / 6.0;
    k[(5, 10)] = -mx2 / 2.0;
    k[(5, 11)] = -fx2 * l / 30.0;
    k[(7, 9)] = -my2 / l;
    k[(7, 10)] = mx2 / l;
    k[(7, 11)] = -fx2 / 10.0;
    k[(8, 9)] = -mz2 / l;
    k[(8, 10)] = fx2 / 10.0;
    k[(8, 11)] = mx2 / l;
    k[(9, 10)] = (mz1 - 2.0 * mz2) / 6.0;
    k[(9, 11)] = -(my1 - 2.0 * my2) / 6.0;

    let mut k = k + k.transpose();

    let axial = fx2 / l;
    let transverse = 6.0 * fx2 / (5.0 * l);
    let torsion = fx2 * i_rho / (a * l);
    let rotation = 2.0 * fx2 * l / 15.0;
    for (idx, value) in [
        (0, axial),
        (1, transverse),
        (2, transverse),
        (3, torsion),
        (4, rotation),
        (5, rotation),
    ] {
        k[(idx, idx)] = value;
        k[(idx + 6, idx + 6)] = value;
    }
    Ok(k)
}

/// Reference axis used when no `local_z` is supplied: global z, or global y
/// when the element is vertical (`|ex · ẑ| > 1 - PARALLEL_TOL`).
pub fn default_reference_axis(ex: &Vector3<f64>) -> Vector3<f64> {
    if ex.z.abs() > 1.0 - PARALLEL_TOL {
        Vector3::y()
    } else {
        Vector3::z()
    }
}

/// Rejects a `local_z` that is not unit length or is parallel to the element axis `ex`.
pub fn check_local_z(ex: &Vector3<f64>, local_z: &Vector3<f64>) -> Result<()> {
    let norm = local_z.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > UNIT_LENGTH_TOL {
        return Err(FemError::InvalidArgument(format!(
            "local_z must be a unit vector (norm {norm})"
        )));
    }
    if local_z.dot(ex).abs() >= 1.0 - PARALLEL_TOL {
        return Err(FemError::InvalidArgument(
            "local_z is parallel to the element axis".into(),
        ));
    }
    Ok(())
}

/// Rows are the local axes `(ex, ey, ez)` expressed in global coordinates.
///
/// `ex` points from node i to node j, `ey = normalize(ref × ex)` and
/// `ez = ex × ey`, which makes the triad right-handed.
pub fn direction_cosines(
    p_i: Point3,
    p_j: Point3,
    local_z: Option<[f64; 3]>,
) -> Result<Matrix3<f64>> {
    let axis = p_j.to_vector() - p_i.to_vector();
    let length = axis.norm();
    if !(length.is_finite() && length > ZERO_LENGTH_TOL) {
        return Err(FemError::DegenerateElement(format!(
            "zero-length element between {p_i:?} and {p_j:?}"
        )));
    }
    let ex = axis / length;
    let reference = match local_z {
        Some(lz) => {
            let lz = Vector3::from(lz);
            check_local_z(&ex, &lz)?;
            lz
        }
        None => default_reference_axis(&ex),
    };
    let ey = reference.cross(&ex).normalize();
    let ez = ex.cross(&ey).normalize();
    Ok(Matrix3::from_rows(&[
        ex.transpose(),
        ey.transpose(),
        ez.transpose(),
    ]))
}

/// 12×12 block-diagonal transformation with four copies of the direction-cosine block.
pub fn transformation_matrix_3d(
    p_i: Point3,
    p_j: Point3,
    local_z: Option<[f64; 3]>,
) -> Result<Matrix12> {
    let r = direction_cosines(p_i, p_j, local_z)?;
    let mut gamma = Matrix12::zeros();
    for b in 0..4 {
        gamma.fixed_view_mut::<3, 3>(3 * b, 3 * b).copy_from(&r);
    }
    Ok(gamma)
}

pub fn element_length(p_i: Point3, p_j: Point3) -> f64 {
    (p_j.to_vector() - p_i.to_vector()).norm()
}

/// Local end forces `k_local · (Γ · u_global)` for one element.
pub fn local_element_loads(
    section: &Section,
    p_i: Point3,
    p_j: Point3,
    local_z: Option<[f64; 3]>,
    u_global: &Vector12,
) -> Result<Vector12> {
    let gamma = transformation_matrix_3d(p_i, p_j, local_z)?;
    let k = section_elastic_stiffness(section, element_length(p_i, p_j))?;
    Ok(k * (gamma * u_global))
}
