//! Structured quadratic meshes of an axis-aligned rectangle.
//!
//! Both generators place nodes on the refined `(2nx+1) × (2ny+1)` lattice
//! and number them row by row from the lower-left corner. Quad8 meshes omit
//! the lattice points at cell centers.

use serde::{Deserialize, Serialize};

use crate::error::{FemError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Tri6,
    Quad8,
}

impl ElementKind {
    pub fn nodes_per_element(self) -> usize {
        match self {
            ElementKind::Tri6 => 6,
            ElementKind::Quad8 => 8,
        }
    }

    pub fn corners(self) -> usize {
        match self {
            ElementKind::Tri6 => 3,
            ElementKind::Quad8 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh2D {
    pub coords: Vec<[f64; 2]>,
    pub connectivity: Vec<Vec<usize>>,
    pub kind: ElementKind,
}

impl Mesh2D {
    /// Signed area of element `e`'s corner polygon (positive when counterclockwise).
    pub fn corner_signed_area(&self, e: usize) -> f64 {
        let corners = &self.connectivity[e][..self.kind.corners()];
        let mut twice = 0.0;
        for (k, &a) in corners.iter().enumerate() {
            let b = corners[(k + 1) % corners.len()];
            let (pa, pb) = (self.coords[a], self.coords[b]);
            twice += pa[0] * pb[1] - pb[0] * pa[1];
        }
        0.5 * twice
    }
}

struct Lattice {
    x_lo: f64,
    y_lo: f64,
    dx: f64,
    dy: f64,
    cols: usize,
    rows: usize,
}

impl Lattice {
    fn new(x_lo: f64, y_lo: f64, x_hi: f64, y_hi: f64, nx: usize, ny: usize) -> Result<Self> {
        let finite = [x_lo, y_lo, x_hi, y_hi].iter().all(|v| v.is_finite());
        if !finite || x_hi <= x_lo || y_hi <= y_lo {
            return Err(FemError::InvalidArgument(format!(
                "invalid rectangle [{x_lo}, {x_hi}] x [{y_lo}, {y_hi}]"
            )));
        }
        if nx == 0 || ny == 0 {
            return Err(FemError::InvalidArgument(format!(
                "cell counts must be at least 1 (got nx={nx}, ny={ny})"
            )));
        }
        Ok(Lattice {
            x_lo,
            y_lo,
            dx: (x_hi - x_lo) / (2 * nx) as f64,
            dy: (y_hi - y_lo) / (2 * ny) as f64,
            cols: 2 * nx + 1,
            rows: 2 * ny + 1,
        })
    }

    fn point(&self, col: usize, row: usize) -> [f64; 2] {
        [
            self.x_lo + self.dx * col as f64,
            self.y_lo + self.dy * row as f64,
        ]
    }
}

pub fn tri6_mesh_rectangle(
    x_lo: f64,
    y_lo: f64,
    x_hi: f64,
    y_hi: f64,
    nx: usize,
    ny: usize,
) -> Result<Mesh2D> {
    let lat = Lattice::new(x_lo, y_lo, x_hi, y_hi, nx, ny)?;
    let mut coords = Vec::with_capacity(lat.cols * lat.rows);
    for row in 0..lat.rows {
        for col in 0..lat.cols {
            coords.push(lat.point(col, row));
        }
    }
    let id = |col: usize, row: usize| row * lat.cols + col;

    let mut connectivity = Vec::with_capacity(2 * nx * ny);
    for cy in 0..ny {
        for cx in 0..nx {
            let (c0, r0) = (2 * cx, 2 * cy);
            let bl = id(c0, r0);
            let br = id(c0 + 2, r0);
            let tr = id(c0 + 2, r0 + 2);
            let tl = id(c0, r0 + 2);
            let center = id(c0 + 1, r0 + 1);
            // split along the diagonal bl → tr
            connectivity.push(vec![bl, br, tr, id(c0 + 1, r0), id(c0 + 2, r0 + 1), center]);
            connectivity.push(vec![bl, tr, tl, center, id(c0 + 1, r0 + 2), id(c0, r0 + 1)]);
        }
    }
    Ok(Mesh2D {
        coords,
        connectivity,
        kind: ElementKind::Tri6,
    })
}

pub fn quad8_mesh_rectangle(
    x_lo: f64,
    y_lo: f64,
    x_hi: f64,
    y_hi: f64,
    nx: usize,
    ny: usize,
) -> Result<Mesh2D> {
    let lat = Lattice::new(x_lo, y_lo, x_hi, y_hi, nx, ny)?;
    let mut index = vec![usize::MAX; lat.cols * lat.rows];
    let mut coords = Vec::new();
    for row in 0..lat.rows {
        for col in 0..lat.cols {
            if row % 2 == 1 && col % 2 == 1 {
                continue;
            }
            index[row * lat.cols + col] = coords.len();
            coords.push(lat.point(col, row));
        }
    }
    let id = |col: usize, row: usize| index[row * lat.cols + col];

    let mut connectivity = Vec::with_capacity(nx * ny);
    for cy in 0..ny {
        for cx in 0..nx {
            let (c0, r0) = (2 * cx, 2 * cy);
            connectivity.push(vec![
                id(c0, r0),
                id(c0 + 2, r0),
                id(c0 + 2, r0 + 2),
                id(c0, r0 + 2),
                id(c0 + 1, r0),
                id(c0 + 2, r0 + 1),
                id(c0 + 1, r0 + 2),
                id(c0, r0 + 1),
            ]);
        }
    }
    Ok(Mesh2D {
        coords,
        connectivity,
        kind: ElementKind::Quad8,
    })
}
