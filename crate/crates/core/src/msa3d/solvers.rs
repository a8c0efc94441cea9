//! Partitioned static solve, linear buckling eigen-solve, and the two
//! end-to-end frame pipelines built from them.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{FemError, Result};
use crate::model::{validate_model, BucklingSolution, DofPartition, FrameModel, StaticSolution};

use super::assembly::{
    assemble_global_elastic_stiffness, assemble_global_geometric_stiffness, assemble_global_loads,
    partition_dofs,
};

/// Numerical thresholds for the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Reject `K_ff` whose 1-norm condition number reaches this value.
    pub condition_limit: f64,
    /// Load factors at or below this are not treated as buckling.
    pub eig_positivity_floor: f64,
    /// Largest `|Im μ| / |μ|` accepted as a real eigenvalue.
    pub complex_tolerance: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            condition_limit: 1e16,
            eig_positivity_floor: 1e-10,
            complex_tolerance: 1e-8,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [
            self.condition_limit,
            self.eig_positivity_floor,
            self.complex_tolerance,
        ]
        .iter()
        .all(|v| *v > 0.0);
        if all_positive {
            Ok(())
        } else {
            Err(FemError::InvalidArgument(format!(
                "solver thresholds must be positive: {self:?}"
            )))
        }
    }
}

/// Inverse load factors `μ = 1/λ` smaller than this fraction of the largest
/// `|μ|` are round-off from directions `K_g` does not load.
const SPECTRAL_NOISE_RATIO: f64 = 1e-9;
/// Relative asymmetry tolerated before falling back to the general eigen path.
const SYMMETRY_TOL: f64 = 1e-10;
const SCHUR_MAX_ITER: usize = 10_000;

fn submatrix(k: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| k[(rows[r], cols[c])])
}

fn subvector(v: &DVector<f64>, idx: &[usize]) -> DVector<f64> {
    DVector::from_iterator(idx.len(), idx.iter().map(|&i| v[i]))
}

fn check_square(k: &DMatrix<f64>, n: usize, what: &str) -> Result<()> {
    if k.nrows() != n || k.ncols() != n {
        return Err(FemError::InvalidArgument(format!(
            "{what} is {}x{}, expected {n}x{n}",
            k.nrows(),
            k.ncols()
        )));
    }
    Ok(())
}

fn norm_1(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `K_ff Δ_f = F_f − K_fc Δ_c` and recovers the support reactions.
///
/// `prescribed` holds the displacement of each fixed DOF, aligned with
/// `partition.fixed`. Reactions are `K_cf Δ_f + K_cc Δ_c − F_c`: the force the
/// supports exert on top of any load applied directly at a fixed DOF.
pub fn solve_partitioned_linear(
    k: &DMatrix<f64>,
    f: &DVector<f64>,
    partition: &DofPartition,
    prescribed: &[f64],
    settings: &SolverSettings,
) -> Result<StaticSolution> {
    settings.validate()?;
    let n = partition.num_dofs();
    check_square(k, n, "stiffness matrix")?;
    if f.len() != n {
        return Err(FemError::InvalidArgument(format!(
            "load vector has length {}, expected {n}",
            f.len()
        )));
    }
    if prescribed.len() != partition.fixed.len() {
        return Err(FemError::InvalidArgument(format!(
            "{} prescribed values for {} fixed DOFs",
            prescribed.len(),
            partition.fixed.len()
        )));
    }
    if partition.fixed.is_empty() {
        return Err(FemError::SingularSystem(
            "no constrained DOFs; rigid-body motion is unrestrained".into(),
        ));
    }

    let (free, fixed) = (&partition.free, &partition.fixed);
    let delta_c = DVector::from_column_slice(prescribed);

    let delta_f = if free.is_empty() {
        DVector::zeros(0)
    } else {
        let k_ff = submatrix(k, free, free);
        let k_fc = submatrix(k, free, fixed);
        let rhs = subvector(f, free) - k_fc * &delta_c;

        let lu = k_ff.clone().lu();
        let estimate = match lu.try_inverse() {
            Some(inv) => norm_1(&k_ff) * norm_1(&inv),
            None => f64::INFINITY,
        };
        if estimate.is_nan() || estimate >= settings.condition_limit {
            return Err(FemError::IllConditioned {
                estimate,
                limit: settings.condition_limit,
            });
        }
        lu.solve(&rhs)
            .ok_or_else(|| FemError::SingularSystem("K_ff factorization failed".into()))?
    };

    let mut displacements = DVector::zeros(n);
    for (&dof, &v) in free.iter().zip(delta_f.iter()) {
        displacements[dof] = v;
    }
    for (&dof, &v) in fixed.iter().zip(delta_c.iter()) {
        displacements[dof] = v;
    }

    let k_cf = submatrix(k, fixed, free);
    let k_cc = submatrix(k, fixed, fixed);
    let r_c = k_cf * delta_f + k_cc * delta_c - subvector(f, fixed);
    let mut reactions = DVector::zeros(n);
    for (&dof, &v) in fixed.iter().zip(r_c.iter()) {
        reactions[dof] = v;
    }

    Ok(StaticSolution {
        displacements,
        reactions,
    })
}

fn is_symmetric(m: &DMatrix<f64>) -> bool {
    let scale = m.amax();
    (m - m.transpose()).amax() <= SYMMETRY_TOL * scale
}

/// Smallest positive `λ` with `(K_e + λ K_g) φ = 0` on the free DOFs.
///
/// The problem is solved as `K_e φ = λ (−K_g) φ`. When both free blocks are
/// symmetric and `K_e,ff` is positive definite, a Cholesky reduction gives a
/// real symmetric problem. Otherwise a general nonsymmetric eigen-solve is
/// used and eigenvalues with a relative imaginary part above
/// `complex_tolerance` are discarded.
pub fn solve_buckling_eigen(
    k_elastic: &DMatrix<f64>,
    k_geometric: &DMatrix<f64>,
    partition: &DofPartition,
    settings: &SolverSettings,
) -> Result<BucklingSolution> {
    settings.validate()?;
    let n = partition.num_dofs();
    check_square(k_elastic, n, "elastic stiffness")?;
    check_square(k_geometric, n, "geometric stiffness")?;
    let free = &partition.free;
    if free.is_empty() {
        return Err(FemError::InvalidArgument("no free DOFs".into()));
    }

    let ke = submatrix(k_elastic, free, free);
    let kg = submatrix(k_geometric, free, free);

    // symmetric diagonal scaling leaves the eigenvalues unchanged
    let scale = DVector::from_iterator(
        free.len(),
        ke.diagonal()
            .iter()
            .map(|d| if *d > 0.0 { 1.0 / d.sqrt() } else { 1.0 }),
    );
    let ke_s = DMatrix::from_fn(ke.nrows(), ke.ncols(), |r, c| {
        ke[(r, c)] * scale[r] * scale[c]
    });
    let kg_s = DMatrix::from_fn(kg.nrows(), kg.ncols(), |r, c| {
        kg[(r, c)] * scale[r] * scale[c]
    });

    let symmetric_path = if is_symmetric(&ke_s) && is_symmetric(&kg_s) {
        ke_s.clone().cholesky()
    } else {
        None
    };

    let (lambda, mode_scaled) = match symmetric_path {
        Some(chol) => symmetric_pencil(&chol, &kg_s, settings)?,
        None => general_pencil(&ke_s, &kg_s, settings)?,
    };

    let mode_free = mode_scaled.component_mul(&scale);
    let mut mode = DVector::zeros(n);
    for (&dof, &v) in free.iter().zip(mode_free.iter()) {
        mode[dof] = v;
    }
    normalize_mode(&mut mode);
    Ok(BucklingSolution {
        lambda_cr: lambda,
        mode,
    })
}

fn accept(mu: f64, mu_scale: f64, settings: &SolverSettings) -> bool {
    mu > SPECTRAL_NOISE_RATIO * mu_scale && 1.0 / mu > settings.eig_positivity_floor
}

fn symmetric_pencil(
    chol: &nalgebra::Cholesky<f64, nalgebra::Dyn>,
    kg: &DMatrix<f64>,
    settings: &SolverSettings,
) -> Result<(f64, DVector<f64>)> {
    let l = chol.l();
    // C = L⁻¹ (−K_g) L⁻ᵀ
    let x = l
        .solve_lower_triangular(&(-kg))
        .ok_or_else(|| FemError::SingularSystem("Cholesky factor is singular".into()))?;
    let c = l
        .solve_lower_triangular(&x.transpose())
        .ok_or_else(|| FemError::SingularSystem("Cholesky factor is singular".into()))?;
    let c = (&c + c.transpose()) * 0.5;

    let eig = SymmetricEigen::new(c);
    let mu_scale = eig.eigenvalues.amax();
    let best = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, mu)| accept(**mu, mu_scale, settings))
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, mu)| (i, *mu));
    let (idx, mu) = best.ok_or(FemError::NoBucklingMode)?;
    let y = eig.eigenvectors.column(idx).into_owned();
    let phi = l
        .transpose()
        .solve_upper_triangular(&y)
        .ok_or_else(|| FemError::SingularSystem("Cholesky factor is singular".into()))?;
    Ok((1.0 / mu, phi))
}

fn general_pencil(
    ke: &DMatrix<f64>,
    kg: &DMatrix<f64>,
    settings: &SolverSettings,
) -> Result<(f64, DVector<f64>)> {
    // μ = 1/λ are the eigenvalues of K_e⁻¹ (−K_g)
    let a = ke.clone().lu().solve(&(-kg)).ok_or_else(|| {
        FemError::SingularSystem("elastic stiffness is singular on the free DOFs".into())
    })?;
    let schur = a
        .try_schur(f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| FemError::SingularSystem("eigen-solve did not converge".into()))?;
    let spectrum = schur.complex_eigenvalues();
    let mu_scale = spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut saw_complex = false;
    let mut best: Option<f64> = None;
    for z in spectrum.iter() {
        if !accept(z.re, mu_scale, settings) {
            continue;
        }
        if z.im.abs() > settings.complex_tolerance * z.norm() {
            saw_complex = true;
            continue;
        }
        if best.is_none_or(|b| z.re > b) {
            best = Some(z.re);
        }
    }
    let mu = match best {
        Some(mu) => mu,
        None if saw_complex => return Err(FemError::ComplexSpectrum),
        None => return Err(FemError::NoBucklingMode),
    };
    let lambda = 1.0 / mu;

    // mode: right singular vector of the smallest singular value of K_e + λ K_g
    let pencil = ke + kg * lambda;
    let svd = pencil.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| FemError::SingularSystem("SVD did not return vectors".into()))?;
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty free set");
    Ok((lambda, v_t.row(idx).transpose()))
}

/// Scales so the largest-magnitude entry is exactly `+1`.
fn normalize_mode(mode: &mut DVector<f64>) {
    let idx = mode.iamax();
    let peak = mode[idx];
    if peak != 0.0 {
        *mode /= peak;
        mode[idx] = 1.0;
    }
}

/// Linear static analysis of a frame under its nodal loads.
pub fn solve_linear_elastic_frame(
    model: &FrameModel,
    settings: &SolverSettings,
) -> Result<StaticSolution> {
    validate_model(model).into_result()?;
    let k = assemble_global_elastic_stiffness(model)?;
    let f = assemble_global_loads(model)?;
    let partition = partition_dofs(model)?;
    let prescribed = model.prescribed_values(&partition.fixed);
    solve_partitioned_linear(&k, &f, &partition, &prescribed, settings)
}

/// Elastic critical load factor of the applied load pattern.
///
/// The whole load map is the reference load `P_ref`; the critical load is
/// `λ_cr · P_ref`.
pub fn elastic_critical_load(
    model: &FrameModel,
    settings: &SolverSettings,
) -> Result<BucklingSolution> {
    validate_model(model).into_result()?;
    let k = assemble_global_elastic_stiffness(model)?;
    let f = assemble_global_loads(model)?;
    let partition = partition_dofs(model)?;
    let prescribed = model.prescribed_values(&partition.fixed);
    let stat = solve_partitioned_linear(&k, &f, &partition, &prescribed, settings)?;
    let kg = assemble_global_geometric_stiffness(model, &stat.displacements)?;
    solve_buckling_eigen(&k, &kg, &partition, settings)
}
