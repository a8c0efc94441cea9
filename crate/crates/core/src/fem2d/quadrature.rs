use crate::error::{FemError, Result};

/// Integration points in reference coordinates `(ξ, η)` with their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.points
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    /// `Σ w_q f(ξ_q, η_q)`.
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.iter().map(|([x, y], w)| w * f(x, y)).sum()
    }
}

/// Gauss–Legendre points and weights on `[−1, 1]` for 1, 2 or 3 points.
pub fn gauss_legendre_1d(num_points: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    match num_points {
        1 => Ok((vec![0.0], vec![2.0])),
        2 => {
            let g = 1.0 / 3f64.sqrt();
            Ok((vec![-g, g], vec![1.0, 1.0]))
        }
        3 => {
            let g = (3.0f64 / 5.0).sqrt();
            Ok((vec![-g, 0.0, g], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0]))
        }
        n => Err(FemError::InvalidArgument(format!(
            "1D Gauss rule with {n} points is not supported (use 1, 2 or 3)"
        ))),
    }
}

/// Tensor-product Gauss–Legendre rule on `[−1, 1]²` with 1, 4 or 9 points.
///
/// Points run with ξ varying fastest.
pub fn quad_quadrature(num_points: usize) -> Result<QuadratureRule> {
    let per_axis = match num_points {
        1 => 1,
        4 => 2,
        9 => 3,
        n => {
            return Err(FemError::InvalidArgument(format!(
                "square rule with {n} points is not supported (use 1, 4 or 9)"
            )))
        }
    };
    let (x, w) = gauss_legendre_1d(per_axis)?;
    let mut points = Vec::with_capacity(num_points);
    let mut weights = Vec::with_capacity(num_points);
    for j in 0..per_axis {
        for i in 0..per_axis {
            points.push([x[i], x[j]]);
            weights.push(w[i] * w[j]);
        }
    }
    Ok(QuadratureRule { points, weights })
}

/// Rules on the triangle `(0,0), (1,0), (0,1)` exact to total degree 1, 2 and 3.
pub fn tri_quadrature(num_points: usize) -> Result<QuadratureRule> {
    let rule = match num_points {
        1 => QuadratureRule {
            points: vec![[1.0 / 3.0, 1.0 / 3.0]],
            weights: vec![0.5],
        },
        3 => QuadratureRule {
            points: vec![[0.5, 0.0], [0.5, 0.5], [0.0, 0.5]],
            weights: vec![1.0 / 6.0; 3],
        },
        4 => QuadratureRule {
            points: vec![[1.0 / 3.0, 1.0 / 3.0], [0.6, 0.2], [0.2, 0.6], [0.2, 0.2]],
            weights: vec![-27.0 / 96.0, 25.0 / 96.0, 25.0 / 96.0, 25.0 / 96.0],
        },
        n => {
            return Err(FemError::InvalidArgument(format!(
                "triangle rule with {n} points is not supported (use 1, 3 or 4)"
            )))
        }
    };
    Ok(rule)
}
