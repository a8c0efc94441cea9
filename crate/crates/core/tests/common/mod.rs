#![allow(dead_code)]

use femkit::model::{FrameElement, FrameModel, Point3, Section, Support};
use femkit::msa3d::{section_elastic_stiffness, transformation_matrix_3d};
use nalgebra::{DMatrix, Vector3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut StdRng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn random_section(rng: &mut StdRng) -> Section {
    let s = Section::new(
        rng.random_range(50.0..200.0),
        rng.random_range(0.0..0.45),
        rng.random_range(0.5..2.0),
        rng.random_range(0.05..0.5),
        rng.random_range(0.05..0.5),
        rng.random_range(0.05..0.5),
    );
    if rng.random_bool(0.3) {
        s.with_i_rho(rng.random_range(0.1..1.0))
    } else {
        s
    }
}

/// Tree-shaped frame: every new node hangs off a random earlier node.
/// Node 0 is fully fixed, so the model is well posed.
pub fn random_frame(rng: &mut StdRng, num_elements: usize) -> FrameModel {
    let mut nodes = vec![Point3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )];
    let mut model = FrameModel::default();
    for k in 1..=num_elements {
        let parent = rng.random_range(0..k);
        let offset = unit_vector(rng) * rng.random_range(0.5..2.0);
        let p = nodes[parent].to_vector() + offset;
        nodes.push(Point3::new(p.x, p.y, p.z));
        let mut el = FrameElement::new(parent, k, random_section(rng));
        if rng.random_bool(0.5) {
            let ex = offset.normalize();
            let lz = loop {
                let c = unit_vector(rng);
                if c.dot(&ex).abs() < 0.9 {
                    break c;
                }
            };
            el = el.with_local_z([lz.x, lz.y, lz.z]);
        }
        model.elements.push(el);
    }
    model.nodes = nodes;
    model.support(0, Support::fixed());
    model
}

pub fn random_loads(
    rng: &mut StdRng,
    model: &FrameModel,
) -> std::collections::BTreeMap<usize, [f64; 6]> {
    let mut loads = std::collections::BTreeMap::new();
    for node in 1..model.num_nodes() {
        if rng.random_bool(0.7) {
            let mut l = [0.0; 6];
            for v in l.iter_mut() {
                *v = rng.random_range(-10.0..10.0);
            }
            loads.insert(node, l);
        }
    }
    if loads.is_empty() {
        loads.insert(model.num_nodes() - 1, [1.0, -2.0, 3.0, 0.5, -0.5, 0.25]);
    }
    loads
}

/// Gather-form assembly: every global entry `(p, q)` is the sum over
/// elements whose DOF map contains both `p` and `q` of the matching
/// entry of that element's globalized stiffness.
pub fn gather_assembly(model: &FrameModel) -> DMatrix<f64> {
    let n = 6 * model.num_nodes();
    let element_matrices: Vec<_> = model
        .elements
        .iter()
        .map(|el| {
            let (pi, pj) = (model.nodes[el.node_i], model.nodes[el.node_j]);
            let g = transformation_matrix_3d(pi, pj, el.local_z).unwrap();
            let l = (pj.to_vector() - pi.to_vector()).norm();
            let k = section_elastic_stiffness(&el.section, l).unwrap();
            g.transpose() * k * g
        })
        .collect();
    let local_index = |el: &FrameElement, dof: usize| -> Option<usize> {
        let (node, k) = (dof / 6, dof % 6);
        if node == el.node_i {
            Some(k)
        } else if node == el.node_j {
            Some(6 + k)
        } else {
            None
        }
    };
    DMatrix::from_fn(n, n, |p, q| {
        let mut sum = 0.0;
        for (el, ke) in model.elements.iter().zip(&element_matrices) {
            if let (Some(a), Some(b)) = (local_index(el, p), local_index(el, q)) {
                sum += ke[(a, b)];
            }
        }
        sum
    })
}

/// Vertical cantilever column of height `h` on `n` elements, fixed at the
/// base, with a unit compressive load at the top.
pub fn euler_column(n: usize, h: f64, section: Section) -> FrameModel {
    let nodes = (0..=n)
        .map(|k| Point3::new(0.0, 0.0, h * k as f64 / n as f64))
        .collect();
    let mut m = FrameModel::new(nodes);
    for k in 0..n {
        m.add_element(FrameElement::new(k, k + 1, section));
    }
    m.support(0, Support::fixed());
    m.load(n, [0.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
    m
}

pub fn column_section() -> Section {
    Section::new(200.0, 0.3, 1.0, 0.5, 1.0, 2.0)
}

/// One-element cantilever of length 2 along global x.
pub fn reference_cantilever(load: [f64; 6]) -> FrameModel {
    let mut m = FrameModel::new(vec![Point3::new(0.0, 0.0, 0.0), Point3::new(2.0, 0.0, 0.0)]);
    m.add_element(FrameElement::new(
        0,
        1,
        Section::new(210e6, 0.3, 0.01, 4e-2, 6e-2, 1e-2),
    ))
    .support(0, Support::fixed())
    .load(1, load);
    m
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
