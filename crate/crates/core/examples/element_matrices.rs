//! Local elastic and geometric stiffness of one element, and its
//! transformation to global axes.

use femkit::model::Point3;
use femkit::msa3d::{
    local_elastic_stiffness_3d, local_geometric_stiffness_3d, transformation_matrix_3d,
    GeometricLoads,
};

fn main() -> femkit::Result<()> {
    let k = local_elastic_stiffness_3d(200e9, 0.3, 1e-2, 2.0, 8e-6, 6e-6, 1e-6)?;
    println!("k_e diagonal: {:.4e}", k.diagonal().transpose());

    let kg = local_geometric_stiffness_3d(2.0, 1e-2, 1.4e-5, &GeometricLoads::axial(-1e3))?;
    println!("k_g diagonal: {:.4e}", kg.diagonal().transpose());

    // an inclined member, with and without an explicit local z axis
    let (pi, pj) = (Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 1.0, 1.0));
    let g = transformation_matrix_3d(pi, pj, None)?;
    println!(
        "rotation block (default axes):{:.4}",
        g.fixed_view::<3, 3>(0, 0)
    );
    let g = transformation_matrix_3d(pi, pj, Some([0.7071067811865476, -0.7071067811865476, 0.0]))?;
    println!(
        "rotation block (local z given):{:.4}",
        g.fixed_view::<3, 3>(0, 0)
    );
    Ok(())
}
