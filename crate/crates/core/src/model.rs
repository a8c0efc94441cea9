//! Frame model types shared by every 3D analysis routine.
//!
//! Global degrees of freedom are numbered node-major: node `n` owns the six
//! consecutive indices `6n..6n+6` in the order `[u, v, w, θx, θy, θz]`.
//! Node ids are dense integers `0..n`. Units are not tracked; callers must use
//! one consistent system throughout a model.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{FemError, Result};
use crate::msa3d::elements::{check_local_z, ZERO_LENGTH_TOL};

pub const DOFS_PER_NODE: usize = 6;

/// Nodal coordinates. Serialized as a bare `[x, y, z]` array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(c: [f64; 3]) -> Self {
        Point3::new(c[0], c[1], c[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

/// Material and cross-section properties of a 3D beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Section {
    #[serde(rename = "E")]
    pub e: f64,
    pub nu: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "Iy")]
    pub iy: f64,
    #[serde(rename = "Iz")]
    pub iz: f64,
    #[serde(rename = "J")]
    pub j: f64,
    /// Polar moment used by the Wagner coupling term; `Iy + Iz` when absent.
    #[serde(rename = "I_rho", default, skip_serializing_if = "Option::is_none")]
    pub i_rho: Option<f64>,
}

impl Section {
    pub fn new(e: f64, nu: f64, a: f64, iy: f64, iz: f64, j: f64) -> Self {
        Section {
            e,
            nu,
            a,
            iy,
            iz,
            j,
            i_rho: None,
        }
    }

    pub fn with_i_rho(mut self, i_rho: f64) -> Self {
        self.i_rho = Some(i_rho);
        self
    }

    pub fn effective_i_rho(&self) -> f64 {
        self.i_rho.unwrap_or(self.iy + self.iz)
    }

    pub fn shear_modulus(&self) -> f64 {
        self.e / (2.0 * (1.0 + self.nu))
    }

    /// Lists every violated section invariant.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let positive = [
            ("E", self.e),
            ("A", self.a),
            ("Iy", self.iy),
            ("Iz", self.iz),
            ("J", self.j),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                out.push(format!("{name} must be positive and finite (got {value})"));
            }
        }
        if !(self.nu > -1.0 && self.nu < 0.5) {
            out.push(format!("nu must lie in (-1, 0.5) (got {})", self.nu));
        }
        if let Some(i_rho) = self.i_rho {
            if !(i_rho.is_finite() && i_rho > 0.0) {
                out.push(format!("I_rho must be positive and finite (got {i_rho})"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameElement {
    #[serde(rename = "i")]
    pub node_i: usize,
    #[serde(rename = "j")]
    pub node_j: usize,
    pub section: Section,
    /// Reference direction for the local z axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_z: Option<[f64; 3]>,
}

impl FrameElement {
    pub fn new(node_i: usize, node_j: usize, section: Section) -> Self {
        FrameElement {
            node_i,
            node_j,
            section,
            local_z: None,
        }
    }

    pub fn with_local_z(mut self, local_z: [f64; 3]) -> Self {
        self.local_z = Some(local_z);
        self
    }

    /// Global DOF indices of the element's 12 local DOFs.
    pub fn dof_map(&self) -> [usize; 12] {
        let mut map = [0; 12];
        for k in 0..DOFS_PER_NODE {
            map[k] = DOFS_PER_NODE * self.node_i + k;
            map[k + DOFS_PER_NODE] = DOFS_PER_NODE * self.node_j + k;
        }
        map
    }
}

/// Constraint flags for the six DOFs of one node, with prescribed values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "SupportRepr", into = "SupportRepr")]
pub struct Support {
    pub flags: [bool; 6],
    pub values: [f64; 6],
}

impl Support {
    pub fn new(flags: [bool; 6]) -> Self {
        Support {
            flags,
            values: [0.0; 6],
        }
    }

    pub fn fixed() -> Self {
        Support::new([true; 6])
    }

    /// Translations restrained, rotations free.
    pub fn pinned() -> Self {
        Support::new([true, true, true, false, false, false])
    }

    pub fn with_values(mut self, values: [f64; 6]) -> Self {
        self.values = values;
        self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SupportRepr {
    Flags([bool; 6]),
    Full {
        flags: [bool; 6],
        #[serde(default)]
        values: [f64; 6],
    },
}

impl From<SupportRepr> for Support {
    fn from(repr: SupportRepr) -> Self {
        match repr {
            SupportRepr::Flags(flags) => Support::new(flags),
            SupportRepr::Full { flags, values } => Support { flags, values },
        }
    }
}

impl From<Support> for SupportRepr {
    fn from(s: Support) -> Self {
        if s.values.iter().all(|v| *v == 0.0) {
            SupportRepr::Flags(s.flags)
        } else {
            SupportRepr::Full {
                flags: s.flags,
                values: s.values,
            }
        }
    }
}

/// Nodes, elements, supports and nodal loads of a 3D frame.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameModel {
    pub nodes: Vec<Point3>,
    pub elements: Vec<FrameElement>,
    #[serde(default)]
    pub boundary: BTreeMap<usize, Support>,
    /// `[Fx, Fy, Fz, Mx, My, Mz]` per loaded node.
    #[serde(default)]
    pub loads: BTreeMap<usize, [f64; 6]>,
}

impl FrameModel {
    pub fn new(nodes: Vec<Point3>) -> Self {
        FrameModel {
            nodes,
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_dofs(&self) -> usize {
        DOFS_PER_NODE * self.nodes.len()
    }

    pub fn add_element(&mut self, element: FrameElement) -> &mut Self {
        self.elements.push(element);
        self
    }

    pub fn support(&mut self, node: usize, support: Support) -> &mut Self {
        self.boundary.insert(node, support);
        self
    }

    /// Adds to any load already present at `node`.
    pub fn load(&mut self, node: usize, load: [f64; 6]) -> &mut Self {
        let entry = self.loads.entry(node).or_insert([0.0; 6]);
        for (acc, l) in entry.iter_mut().zip(load) {
            *acc += l;
        }
        self
    }

    pub fn global_dof_index(&self, node: usize, local_dof: usize) -> Result<usize> {
        global_dof_index(self.nodes.len(), node, local_dof)
    }

    /// Prescribed values on the fixed DOFs, aligned with `partition.fixed`.
    pub fn prescribed_values(&self, fixed: &[usize]) -> Vec<f64> {
        fixed
            .iter()
            .map(|&dof| {
                let (node, k) = (dof / DOFS_PER_NODE, dof % DOFS_PER_NODE);
                self.boundary.get(&node).map_or(0.0, |s| s.values[k])
            })
            .collect()
    }

    pub fn num_constrained_dofs(&self) -> usize {
        self.boundary
            .values()
            .map(|s| s.flags.iter().filter(|f| **f).count())
            .sum()
    }
}

/// Maps `(node, local_dof)` to its node-major global index `6·node + local_dof`.
pub fn global_dof_index(num_nodes: usize, node: usize, local_dof: usize) -> Result<usize> {
    if node >= num_nodes {
        return Err(FemError::InvalidArgument(format!(
            "node {node} out of range for a model with {num_nodes} nodes"
        )));
    }
    if local_dof >= DOFS_PER_NODE {
        return Err(FemError::InvalidArgument(format!(
            "local DOF {local_dof} out of range 0..=5"
        )));
    }
    Ok(DOFS_PER_NODE * node + local_dof)
}

/// Free and fixed global DOF index sets, each ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DofPartition {
    pub free: Vec<usize>,
    pub fixed: Vec<usize>,
}

impl DofPartition {
    /// Builds the partition of `0..num_dofs` whose fixed set is `fixed`.
    pub fn from_fixed(num_dofs: usize, fixed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut is_fixed = vec![false; num_dofs];
        for dof in fixed {
            if dof >= num_dofs {
                return Err(FemError::InvalidArgument(format!(
                    "fixed DOF {dof} out of range for {num_dofs} DOFs"
                )));
            }
            is_fixed[dof] = true;
        }
        let (fixed, free): (Vec<usize>, Vec<usize>) = (0..num_dofs).partition(|&d| is_fixed[d]);
        Ok(DofPartition { free, fixed })
    }

    pub fn num_dofs(&self) -> usize {
        self.free.len() + self.fixed.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticSolution {
    /// Nodal displacements in global DOF order.
    pub displacements: DVector<f64>,
    /// Support reactions; zero away from fixed DOFs.
    pub reactions: DVector<f64>,
}

impl StaticSolution {
    pub fn node_displacement(&self, node: usize) -> [f64; 6] {
        node_slice(&self.displacements, node)
    }

    pub fn node_reaction(&self, node: usize) -> [f64; 6] {
        node_slice(&self.reactions, node)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BucklingSolution {
    /// Multiplier on the applied load pattern at the elastic critical load.
    pub lambda_cr: f64,
    /// Mode shape in global DOF order, zero at fixed DOFs, max-magnitude entry `+1`.
    pub mode: DVector<f64>,
}

fn node_slice(v: &DVector<f64>, node: usize) -> [f64; 6] {
    let mut out = [0.0; 6];
    out.copy_from_slice(&v.as_slice()[DOFS_PER_NODE * node..DOFS_PER_NODE * (node + 1)]);
    out
}

/// One broken model invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFiniteCoordinate { node: usize },
    BadNodeReference { element: usize, node: usize },
    DegenerateElement { element: usize },
    InvalidSection { element: usize, reason: String },
    InvalidLocalZ { element: usize, reason: String },
    BoundaryNodeOutOfRange { node: usize },
    NonFinitePrescribedValue { node: usize },
    LoadNodeOutOfRange { node: usize },
    NonFiniteLoad { node: usize },
    Unconstrained,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFiniteCoordinate { node } => {
                write!(f, "non-finite coordinate at node {node}")
            }
            Violation::BadNodeReference { element, node } => {
                write!(f, "element {element} references missing node {node}")
            }
            Violation::DegenerateElement { element } => {
                write!(f, "degenerate element {element} (zero length)")
            }
            Violation::InvalidSection { element, reason } => {
                write!(f, "invalid section on element {element}: {reason}")
            }
            Violation::InvalidLocalZ { element, reason } => {
                write!(f, "invalid local_z on element {element}: {reason}")
            }
            Violation::BoundaryNodeOutOfRange { node } => {
                write!(f, "boundary condition on missing node {node}")
            }
            Violation::NonFinitePrescribedValue { node } => {
                write!(f, "non-finite prescribed displacement at node {node}")
            }
            Violation::LoadNodeOutOfRange { node } => write!(f, "load on missing node {node}"),
            Violation::NonFiniteLoad { node } => write!(f, "non-finite load at node {node}"),
            Violation::Unconstrained => write!(f, "unconstrained model"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }

    /// `Ok(())` when valid, otherwise a validation error carrying the report.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(FemError::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Collects every invariant violation in `model`. Never fails.
pub fn validate_model(model: &FrameModel) -> ValidationReport {
    let mut violations = Vec::new();
    let n = model.nodes.len();

    for (node, p) in model.nodes.iter().enumerate() {
        if !p.is_finite() {
            violations.push(Violation::NonFiniteCoordinate { node });
        }
    }

    for (idx, el) in model.elements.iter().enumerate() {
        let mut refs_ok = true;
        for node in [el.node_i, el.node_j] {
            if node >= n {
                violations.push(Violation::BadNodeReference { element: idx, node });
                refs_ok = false;
            }
        }
        for reason in el.section.problems() {
            violations.push(Violation::InvalidSection {
                element: idx,
                reason,
            });
        }
        if el.node_i == el.node_j {
            violations.push(Violation::DegenerateElement { element: idx });
            continue;
        }
        if !refs_ok {
            continue;
        }
        let axis = model.nodes[el.node_j].to_vector() - model.nodes[el.node_i].to_vector();
        let length = axis.norm();
        if length.is_nan() || length <= ZERO_LENGTH_TOL {
            violations.push(Violation::DegenerateElement { element: idx });
            continue;
        }
        if let Some(lz) = el.local_z {
            if let Err(err) = check_local_z(&(axis / length), &Vector3::from(lz)) {
                violations.push(Violation::InvalidLocalZ {
                    element: idx,
                    reason: err.to_string(),
                });
            }
        }
    }

    for (&node, support) in &model.boundary {
        if node >= n {
            violations.push(Violation::BoundaryNodeOutOfRange { node });
        } else if support.values.iter().any(|v| !v.is_finite()) {
            violations.push(Violation::NonFinitePrescribedValue { node });
        }
    }
    for (&node, load) in &model.loads {
        if node >= n {
            violations.push(Violation::LoadNodeOutOfRange { node });
        } else if load.iter().any(|v| !v.is_finite()) {
            violations.push(Violation::NonFiniteLoad { node });
        }
    }

    let constrained = model
        .boundary
        .iter()
        .filter(|(node, _)| **node < n)
        .any(|(_, s)| s.flags.iter().any(|f| *f));
    if !constrained {
        violations.push(Violation::Unconstrained);
    }

    ValidationReport { violations }
}
