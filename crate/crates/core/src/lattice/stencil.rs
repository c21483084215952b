//! Second-order finite differences.
//!
//! Interior sites use the central difference `(f[i+1] - f[i-1]) / 2h`.
//! Periodic axes wrap around; open axes switch to the one-sided
//! second-order stencils `(-3 f0 + 4 f1 - f2) / 2h` and its mirror at the
//! faces.

use rayon::prelude::*;

use super::field::{ScalarField, VectorField};
use super::grid::{Boundary, GridSpec};
use crate::error::{Result, TopoError};

/// How a derivative is obtained.
#[derive(Clone, Copy)]
pub enum DerivativeScheme<'a> {
    Central2,
    /// Samples a supplied exact derivative at the site coordinates.
    Analytic(&'a (dyn Fn(&[f64]) -> f64 + Sync)),
}

impl std::fmt::Debug for DerivativeScheme<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Central2 => f.write_str("Central2"),
            Self::Analytic(_) => f.write_str("Analytic(..)"),
        }
    }
}

pub fn partial_derivative(
    f: &ScalarField,
    axis: usize,
    scheme: DerivativeScheme<'_>,
) -> Result<ScalarField> {
    let grid = f.grid();
    grid.check_axis(axis)?;
    match scheme {
        DerivativeScheme::Central2 => {
            let values = central2(f.values(), grid, axis)?;
            ScalarField::new(grid.clone(), values)
        }
        DerivativeScheme::Analytic(d) => Ok(ScalarField::from_fn(grid, d)),
    }
}

/// Central-difference derivative of a flat site array along `axis`.
pub fn central2(values: &[f64], grid: &GridSpec, axis: usize) -> Result<Vec<f64>> {
    grid.check_axis(axis)?;
    let n = grid.shape()[axis];
    if n < 3 {
        return Err(TopoError::StencilTooLarge { axis, len: n, min: 3 });
    }
    if values.len() != grid.len() {
        return Err(TopoError::ComponentMismatch { expected: grid.len(), found: values.len() });
    }
    let stride = grid.stride(axis);
    let inv2h = 0.5 / grid.spacing()[axis];
    let periodic = grid.boundary() == Boundary::Periodic;
    let out = (0..values.len())
        .into_par_iter()
        .map(|s| {
            let i = (s / stride) % n;
            let base = s - i * stride;
            let at = |j: usize| values[base + j * stride];
            if i > 0 && i + 1 < n {
                (at(i + 1) - at(i - 1)) * inv2h
            } else if periodic {
                let (next, prev) = if i == 0 { (1, n - 1) } else { (0, n - 2) };
                (at(next) - at(prev)) * inv2h
            } else if i == 0 {
                (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h
            } else {
                (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h
            }
        })
        .collect();
    Ok(out)
}

pub fn gradient(f: &ScalarField) -> Result<VectorField> {
    let grid = f.grid();
    let comps = (0..grid.dim())
        .map(|a| central2(f.values(), grid, a))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(grid.clone(), comps)
}

pub fn divergence(v: &VectorField) -> Result<ScalarField> {
    let grid = v.grid();
    let mut acc = vec![0.0; grid.len()];
    for axis in 0..grid.dim() {
        let d = central2(v.component(axis), grid, axis)?;
        acc.iter_mut().zip(d).for_each(|(a, b)| *a += b);
    }
    ScalarField::new(grid.clone(), acc)
}

/// Curl of a 3d vector field.
pub fn curl(v: &VectorField) -> Result<VectorField> {
    let grid = v.grid();
    grid.require_dim(3)?;
    let d = |c: usize, axis: usize| central2(v.component(c), grid, axis);
    let diff = |a: Vec<f64>, b: Vec<f64>| a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>();
    let cx = diff(d(2, 1)?, d(1, 2)?);
    let cy = diff(d(0, 2)?, d(2, 0)?);
    let cz = diff(d(1, 0)?, d(0, 1)?);
    VectorField::new(grid.clone(), vec![cx, cy, cz])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn constant_has_zero_derivative() {
        for g in [
            GridSpec::periodic_cube(2, 8).unwrap(),
            GridSpec::open_cube(3, 5, -1.0, 2.0).unwrap(),
        ] {
            let f = ScalarField::constant(&g, 5.0);
            for axis in 0..g.dim() {
                let d = partial_derivative(&f, axis, DerivativeScheme::Central2).unwrap();
                assert!(d.values().iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn sine_error_is_second_order_small() {
        let g = GridSpec::periodic(&[64], &[TAU]).unwrap();
        let h = g.spacing()[0];
        let f = ScalarField::from_fn(&g, |x| x[0].sin());
        let d = partial_derivative(&f, 0, DerivativeScheme::Central2).unwrap();
        let err = d
            .values()
            .iter()
            .enumerate()
            .map(|(s, v)| (v - g.coords(s)[0].cos()).abs())
            .fold(0.0, f64::max);
        // Leading error is h^2/6 |cos x|.
        assert!(err / (h * h) <= 1.0, "C = {}", err / (h * h));
        assert!(err / (h * h) > 0.1);
    }

    #[test]
    fn linear_is_exact_including_faces() {
        let g = GridSpec::open(&[16], &[0.0], &[1.0]).unwrap();
        let f = ScalarField::from_fn(&g, |x| x[0]);
        let d = partial_derivative(&f, 0, DerivativeScheme::Central2).unwrap();
        assert!(d.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn quadratic_is_exact_at_open_faces() {
        let g = GridSpec::open(&[9], &[0.0], &[1.0]).unwrap();
        let f = ScalarField::from_fn(&g, |x| 3.0 * x[0] * x[0] - x[0]);
        let d = partial_derivative(&f, 0, DerivativeScheme::Central2).unwrap();
        for (s, v) in d.values().iter().enumerate() {
            assert!((v - (6.0 * g.coords(s)[0] - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_scheme_samples_callback() {
        let g = GridSpec::periodic_cube(1, 16).unwrap();
        let f = ScalarField::from_fn(&g, |x| x[0].sin());
        let exact = |x: &[f64]| x[0].cos();
        let d = partial_derivative(&f, 0, DerivativeScheme::Analytic(&exact)).unwrap();
        for (s, v) in d.values().iter().enumerate() {
            assert_eq!(*v, g.coords(s)[0].cos());
        }
    }

    #[test]
    fn axis_out_of_range() {
        let g = GridSpec::periodic_cube(2, 8).unwrap();
        let f = ScalarField::zeros(&g);
        assert!(matches!(
            partial_derivative(&f, 2, DerivativeScheme::Central2),
            Err(TopoError::AxisOutOfRange { axis: 2, dim: 2 })
        ));
    }

    #[test]
    fn mixed_partials_commute_on_periodic_grids() {
        let g = GridSpec::periodic_cube(2, 12).unwrap();
        let f = ScalarField::from_fn(&g, |x| (x[0] + 2.0 * x[1]).sin() * x[1].cos());
        let dxy = central2(&central2(f.values(), &g, 0).unwrap(), &g, 1).unwrap();
        let dyx = central2(&central2(f.values(), &g, 1).unwrap(), &g, 0).unwrap();
        for (a, b) in dxy.iter().zip(&dyx) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
