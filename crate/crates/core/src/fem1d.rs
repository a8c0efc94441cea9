//! One-dimensional bars: uniform meshing, the 2-node bar stiffness, and a
//! linear-elastic solver with piecewise-constant material regions.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{FemError, Result};
use crate::model::DofPartition;
use crate::msa3d::solvers::{solve_partitioned_linear, SolverSettings};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh1D {
    pub node_coords: Vec<f64>,
    /// Element `k` joins nodes `(k, k + 1)`.
    pub connectivity: Vec<[usize; 2]>,
}

impl Mesh1D {
    pub fn num_elements(&self) -> usize {
        self.connectivity.len()
    }
}

/// A stretch of bar with constant modulus, area and axial body force per unit length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarRegion1D {
    pub x_start: f64,
    pub x_end: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(default)]
    pub body_force: f64,
}

/// `num_elements + 1` equally spaced nodes on `[x_min, x_max]`.
///
/// Node `k` sits at `x_min + (x_max − x_min)·k/n`; the last node is `x_max` exactly.
pub fn generate_uniform_1d_mesh(x_min: f64, x_max: f64, num_elements: usize) -> Result<Mesh1D> {
    if num_elements == 0 {
        return Err(FemError::InvalidArgument(
            "number of elements must be at least 1".into(),
        ));
    }
    if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
        return Err(FemError::InvalidArgument(format!(
            "invalid interval [{x_min}, {x_max}]"
        )));
    }
    let n = num_elements as f64;
    let mut node_coords: Vec<f64> = (0..=num_elements)
        .map(|k| x_min + (x_max - x_min) * (k as f64) / n)
        .collect();
    node_coords[num_elements] = x_max;
    let connectivity = (0..num_elements).map(|k| [k, k + 1]).collect();
    Ok(Mesh1D {
        node_coords,
        connectivity,
    })
}

/// `(EA/L)·[[1, −1], [−1, 1]]`.
pub fn local_stiffness_1d(e: f64, a: f64, l: f64) -> Result<Matrix2<f64>> {
    if !(l.is_finite() && l > 0.0) {
        return Err(FemError::DegenerateElement(format!(
            "bar length must be positive (got {l})"
        )));
    }
    if !(e > 0.0 && a > 0.0) {
        return Err(FemError::InvalidArgument(format!(
            "E and A must be positive (got E={e}, A={a})"
        )));
    }
    let k = e * a / l;
    Ok(Matrix2::new(k, -k, -k, k))
}

/// Region containing `x`; on a shared boundary the region with the lower
/// start coordinate wins.
fn region_at(regions: &[BarRegion1D], x: f64) -> Option<&BarRegion1D> {
    regions
        .iter()
        .filter(|r| r.x_start <= x && x <= r.x_end)
        .min_by(|a, b| a.x_start.total_cmp(&b.x_start))
}

/// Displacements of a bar under Dirichlet constraints, point forces and body forces.
///
/// Each element takes its material from the region holding its midpoint.
/// Constant body force `f` contributes `f·L/2` to each end node.
pub fn solve_1d_linear_elastic(
    mesh: &Mesh1D,
    regions: &[BarRegion1D],
    dirichlet: &BTreeMap<usize, f64>,
    neumann: &BTreeMap<usize, f64>,
) -> Result<DVector<f64>> {
    let n = mesh.node_coords.len();
    for r in regions {
        if !(r.x_end > r.x_start && r.e > 0.0 && r.a > 0.0 && r.body_force.is_finite()) {
            return Err(FemError::Configuration(format!("invalid bar region {r:?}")));
        }
    }
    for &node in dirichlet.keys().chain(neumann.keys()) {
        if node >= n {
            return Err(FemError::InvalidArgument(format!(
                "node {node} out of range for {n} nodes"
            )));
        }
    }
    if dirichlet.is_empty() {
        return Err(FemError::SingularSystem(
            "at least one Dirichlet constraint is required".into(),
        ));
    }

    let mut k = DMatrix::zeros(n, n);
    let mut f = DVector::zeros(n);
    for (idx, &[a, b]) in mesh.connectivity.iter().enumerate() {
        let (xa, xb) = (mesh.node_coords[a], mesh.node_coords[b]);
        let mid = 0.5 * (xa + xb);
        let region = region_at(regions, mid).ok_or_else(|| {
            FemError::Configuration(format!(
                "element {idx} (midpoint {mid}) is not covered by any region"
            ))
        })?;
        let l = xb - xa;
        let ke = local_stiffness_1d(region.e, region.a, l)?;
        for (r, gr) in [a, b].into_iter().enumerate() {
            for (c, gc) in [a, b].into_iter().enumerate() {
                k[(gr, gc)] += ke[(r, c)];
            }
            f[gr] += 0.5 * region.body_force * l;
        }
    }
    for (&node, &p) in neumann {
        f[node] += p;
    }

    let partition = DofPartition::from_fixed(n, dirichlet.keys().copied())?;
    let prescribed: Vec<f64> = partition.fixed.iter().map(|d| dirichlet[d]).collect();
    let sol =
        solve_partitioned_linear(&k, &f, &partition, &prescribed, &SolverSettings::default())?;
    Ok(sol.displacements)
}
