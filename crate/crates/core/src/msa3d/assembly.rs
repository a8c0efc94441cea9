//! Global elastic and geometric stiffness, load vector, and DOF partitioning.
//!
//! Storage is dense; element contributions are scattered in element order so
//! identical inputs always produce bitwise-identical matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{FemError, Result};
use crate::model::{validate_model, DofPartition, FrameElement, FrameModel, DOFS_PER_NODE};

use super::elements::{
    element_length, local_geometric_stiffness_3d, section_elastic_stiffness,
    transformation_matrix_3d, GeometricLoads, Matrix12, Vector12,
};

/// Element elastic stiffness in global coordinates, `Γᵀ k Γ`.
pub fn element_global_elastic_stiffness(model: &FrameModel, el: &FrameElement) -> Result<Matrix12> {
    let (p_i, p_j) = (model.nodes[el.node_i], model.nodes[el.node_j]);
    let gamma = transformation_matrix_3d(p_i, p_j, el.local_z)?;
    let k = section_elastic_stiffness(&el.section, element_length(p_i, p_j))?;
    Ok(gamma.transpose() * k * gamma)
}

fn scatter(global: &mut DMatrix<f64>, map: &[usize; 12], k: &Matrix12) {
    for (a, &ga) in map.iter().enumerate() {
        for (b, &gb) in map.iter().enumerate() {
            global[(ga, gb)] += k[(a, b)];
        }
    }
}

pub fn assemble_global_elastic_stiffness(model: &FrameModel) -> Result<DMatrix<f64>> {
    validate_model(model).into_result()?;
    let n = model.num_dofs();
    let mut k = DMatrix::zeros(n, n);
    for el in &model.elements {
        let ke = element_global_elastic_stiffness(model, el)?;
        scatter(&mut k, &el.dof_map(), &ke);
    }
    Ok(k)
}

/// Global displacements of one element's 12 DOFs.
pub fn gather_element_displacements(el: &FrameElement, u_global: &DVector<f64>) -> Vector12 {
    Vector12::from_iterator(el.dof_map().iter().map(|&g| u_global[g]))
}

/// Geometric stiffness driven by the internal forces of the displacement state `u_global`.
///
/// End forces are recovered per element with this crate's own elastic
/// stiffness, the local geometric matrix is globalized with `Γᵀ k_g Γ`, and
/// the assembled result is symmetrized as `(K + Kᵀ) / 2`.
pub fn assemble_global_geometric_stiffness(
    model: &FrameModel,
    u_global: &DVector<f64>,
) -> Result<DMatrix<f64>> {
    validate_model(model).into_result()?;
    let n = model.num_dofs();
    if u_global.len() != n {
        return Err(FemError::InvalidArgument(format!(
            "displacement vector has length {}, expected {n}",
            u_global.len()
        )));
    }
    let mut kg = DMatrix::zeros(n, n);
    for el in &model.elements {
        let (p_i, p_j) = (model.nodes[el.node_i], model.nodes[el.node_j]);
        let l = element_length(p_i, p_j);
        let gamma = transformation_matrix_3d(p_i, p_j, el.local_z)?;
        let ke = section_elastic_stiffness(&el.section, l)?;
        let forces = ke * (gamma * gather_element_displacements(el, u_global));
        let kg_local = local_geometric_stiffness_3d(
            l,
            el.section.a,
            el.section.effective_i_rho(),
            &GeometricLoads::from_end_forces(&forces),
        )?;
        scatter(
            &mut kg,
            &el.dof_map(),
            &(gamma.transpose() * kg_local * gamma),
        );
    }
    Ok((&kg + kg.transpose()) * 0.5)
}

pub fn assemble_global_loads(model: &FrameModel) -> Result<DVector<f64>> {
    let mut f = DVector::zeros(model.num_dofs());
    for (&node, load) in &model.loads {
        for (k, &value) in load.iter().enumerate() {
            f[model.global_dof_index(node, k)?] += value;
        }
    }
    Ok(f)
}

/// Fixed DOFs are those flagged in `model.boundary`; the rest are free.
pub fn partition_dofs(model: &FrameModel) -> Result<DofPartition> {
    let mut fixed = Vec::new();
    for (&node, support) in &model.boundary {
        for (k, _) in support.flags.iter().enumerate().filter(|(_, f)| **f) {
            fixed.push(model.global_dof_index(node, k)?);
        }
    }
    DofPartition::from_fixed(DOFS_PER_NODE * model.num_nodes(), fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Point3, Section, Support};
    use crate::msa3d::elements::local_elastic_stiffness_3d;
    use approx::assert_relative_eq;

    fn section() -> Section {
        Section::new(210e6, 0.3, 0.01, 4e-2, 6e-2, 1e-2)
    }

    fn line(n_el: usize, length: f64) -> FrameModel {
        let nodes = (0..=n_el)
            .map(|k| Point3::new(length * k as f64 / n_el as f64, 0.0, 0.0))
            .collect();
        let mut m = FrameModel::new(nodes);
        for k in 0..n_el {
            m.add_element(FrameElement::new(k, k + 1, section()));
        }
        m.support(0, Support::fixed());
        m
    }

    #[test]
    fn single_x_element_equals_local() {
        let k = assemble_global_elastic_stiffness(&line(1, 2.0)).unwrap();
        let s = section();
        let kl = local_elastic_stiffness_3d(s.e, s.nu, s.a, 2.0, s.iy, s.iz, s.j).unwrap();
        assert_eq!(k, DMatrix::from_iterator(12, 12, kl.iter().copied()));
    }

    #[test]
    fn shared_node_axial_diagonal_doubles() {
        let k = assemble_global_elastic_stiffness(&line(2, 2.0)).unwrap();
        let s = section();
        assert_relative_eq!(k[(6, 6)], 2.0 * s.e * s.a / 1.0, max_relative = 1e-14);
    }

    #[test]
    fn invalid_model_is_rejected() {
        let mut m = line(1, 1.0);
        m.elements[0].node_j = 5;
        assert!(matches!(
            assemble_global_elastic_stiffness(&m),
            Err(FemError::Validation(_))
        ));
    }

    #[test]
    fn zero_displacement_zero_geometric() {
        let m = line(3, 3.0);
        let kg = assemble_global_geometric_stiffness(&m, &DVector::zeros(24)).unwrap();
        assert!(kg.iter().all(|v| *v == 0.0));
        assert!(assemble_global_geometric_stiffness(&m, &DVector::zeros(5)).is_err());
    }

    #[test]
    fn axial_compression_geometric_matches_local() {
        // one element along x, node 1 pushed back by delta
        let m = line(1, 2.0);
        let s = section();
        let delta = -1e-4;
        let mut u = DVector::zeros(12);
        u[6] = delta;
        let kg = assemble_global_geometric_stiffness(&m, &u).unwrap();
        let fx2 = s.e * s.a * delta / 2.0;
        let expected = local_geometric_stiffness_3d(
            2.0,
            s.a,
            s.effective_i_rho(),
            &GeometricLoads::axial(fx2),
        )
        .unwrap();
        for r in 0..12 {
            for c in 0..12 {
                assert_relative_eq!(kg[(r, c)], expected[(r, c)], epsilon = 1e-12 * fx2.abs());
            }
        }
    }

    #[test]
    fn load_vector_placement() {
        let mut m = line(2, 2.0);
        assert!(assemble_global_loads(&m).unwrap().iter().all(|v| *v == 0.0));
        m.load(2, [0.0, 0.0, -100.0, 0.0, 0.0, 0.0]);
        let f = assemble_global_loads(&m).unwrap();
        assert_eq!(f[14], -100.0);
        assert_eq!(f.iter().filter(|v| **v != 0.0).count(), 1);
        m.loads.insert(3, [1.0; 6]);
        assert!(matches!(
            assemble_global_loads(&m),
            Err(FemError::InvalidArgument(_))
        ));
    }

    #[test]
    fn partition_examples() {
        let m = line(1, 1.0);
        let p = partition_dofs(&m).unwrap();
        assert_eq!(p.fixed, (0..6).collect::<Vec<_>>());
        assert_eq!(p.free, (6..12).collect::<Vec<_>>());

        let mut m = line(1, 1.0);
        m.boundary.clear();
        assert!(partition_dofs(&m).unwrap().fixed.is_empty());

        m.support(1, Support::pinned());
        let p = partition_dofs(&m).unwrap();
        assert_eq!(p.fixed, vec![6, 7, 8]);
        assert_eq!(p.free, vec![0, 1, 2, 3, 4, 5, 9, 10, 11]);
    }
}
