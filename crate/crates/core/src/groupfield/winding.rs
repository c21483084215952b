use serde::Serialize;

use super::maurer_cartan::{maurer_cartan, trace_cubed_density, McScheme};
use super::GroupElementField;
use crate::error::{Result, TopoError};
use crate::lattice::volume_integral;

/// Open grids must carry a constant group element on every face.
pub const COMPACTIFICATION_TOL: f64 = 1e-6;

/// `W = (1 / 24π²) ∫ ε^{ijk} tr(L_i L_j L_k)`; the sign makes the hedgehog
/// `cos f − i sin f r̂·σ` with `f(0) = π`, `f(∞) = 0` wind `+1`.
pub const WINDING_NORMALIZATION: &str = "W = +1/(24 pi^2) * integral eps^{ijk} tr(L_i L_j L_k), L = g^-1 dg";

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct WindingReport {
    pub W: f64,
    pub nearest_integer: i64,
    pub deviation: f64,
    pub boundary_deviation: f64,
    pub normalization: &'static str,
}

/// Largest component-wise distance of any boundary element from the first
/// boundary element; zero on periodic grids.
pub fn boundary_deviation(g: &GroupElementField) -> f64 {
    let grid = g.grid();
    if grid.is_periodic() {
        return 0.0;
    }
    let reference = g.at(0);
    (0..grid.len())
        .filter(|&s| grid.on_boundary(s))
        .map(|s| g.at(s).max_abs_diff(&reference))
        .fold(0.0, f64::max)
}

pub fn winding_number(g: &GroupElementField) -> Result<WindingReport> {
    let deviation = boundary_deviation(g);
    if deviation > COMPACTIFICATION_TOL {
        return Err(TopoError::NonConstantBoundary { deviation });
    }
    let mc = maurer_cartan(g, McScheme::Central2)?;
    let density = trace_cubed_density(&mc);
    let w = volume_integral(&density) / (24.0 * std::f64::consts::PI.powi(2));
    let nearest = w.round();
    Ok(WindingReport {
        W: w,
        nearest_integer: nearest as i64,
        deviation: (w - nearest).abs(),
        boundary_deviation: deviation,
        normalization: WINDING_NORMALIZATION,
    })
}
