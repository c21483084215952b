//! Volume and boundary quadrature.
//!
//! Periodic grids use plain Riemann sums, which are exact for trigonometric
//! polynomials resolved by the grid. Open grids use the tensor trapezoidal
//! rule. All reductions go through [`pairwise_sum`] so results do not depend
//! on thread scheduling.

use super::field::{ScalarField, VectorField};
use super::grid::GridSpec;
use crate::error::{Result, TopoError};

const PAIRWISE_BLOCK: usize = 16;

/// Deterministic pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().fold(0.0, |a, b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i + 1 == n {
        0.5
    } else {
        1.0
    }
}

/// Quadrature weight of a site, excluding the cell volume.
pub fn site_weight(grid: &GridSpec, site: usize) -> f64 {
    if grid.is_periodic() {
        return 1.0;
    }
    let idx = grid.multi_index(site);
    (0..grid.dim()).map(|a| trapezoid_weight(idx[a], grid.shape()[a])).product()
}

/// Integral of a flat site array over the grid volume.
pub fn integrate_values(grid: &GridSpec, values: &[f64]) -> f64 {
    let weighted: Vec<f64> = if grid.is_periodic() {
        values.to_vec()
    } else {
        values.iter().enumerate().map(|(s, v)| v * site_weight(grid, s)).collect()
    };
    pairwise_sum(&weighted) * grid.cell_volume()
}

pub fn volume_integral(f: &ScalarField) -> f64 {
    integrate_values(f.grid(), f.values())
}

/// Discrete `sqrt(∫ f²)` with the same weights as [`volume_integral`].
pub fn l2_norm(grid: &GridSpec, values: &[f64]) -> f64 {
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    integrate_values(grid, &sq).sqrt()
}

pub fn max_norm(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Outward flux of a 3d vector field through the six faces of an open box.
pub fn surface_flux(field: &VectorField) -> Result<f64> {
    let grid = field.grid();
    grid.require_dim(3)?;
    if grid.is_periodic() {
        return Err(TopoError::PeriodicGrid);
    }
    let shape = grid.shape();
    let h = grid.spacing();
    let mut faces = Vec::with_capacity(6);
    for normal in 0..3 {
        let (u, v) = match normal {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let area = h[u] * h[v];
        for (side, sign) in [(0, -1.0), (shape[normal] - 1, 1.0)] {
            let mut terms = Vec::with_capacity(shape[u] * shape[v]);
            for i in 0..shape[u] {
                for j in 0..shape[v] {
                    let mut m = [0usize; 3];
                    m[normal] = side;
                    m[u] = i;
                    m[v] = j;
                    let w = trapezoid_weight(i, shape[u]) * trapezoid_weight(j, shape[v]);
                    terms.push(sign * w * field.component(normal)[grid.index_of(&m)]);
                }
            }
            faces.push(pairwise_sum(&terms) * area);
        }
    }
    Ok(faces.iter().sum())
}
