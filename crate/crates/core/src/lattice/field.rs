use rayon::prelude::*;

use super::grid::GridSpec;
use crate::error::{Result, TopoError};

/// One real number per site.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: &GridSpec, value: f64) -> Self {
        Self { values: vec![value; grid.len()], grid: grid.clone() }
    }

    pub fn zeros(grid: &GridSpec) -> Self {
        Self::constant(grid, 0.0)
    }

    /// Samples `f` at every site coordinate.
    pub fn from_fn<F>(grid: &GridSpec, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let dim = grid.dim();
        let values = (0..grid.len())
            .into_par_iter()
            .map(|s| f(&grid.coords(s)[..dim]))
            .collect();
        Self { grid: grid.clone(), values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64 + Sync) -> Self {
        Self { grid: self.grid.clone(), values: self.values.par_iter().map(|&v| f(v)).collect() }
    }

    /// Site-wise `a * self + b * other`.
    pub fn axpby(&self, a: f64, other: &ScalarField, b: f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(TopoError::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self { grid: self.grid.clone(), values })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `dim` real components per site, stored component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: GridSpec,
    components: Vec<Vec<f64>>,
}

impl VectorField {
    pub fn new(grid: GridSpec, components: Vec<Vec<f64>>) -> Result<Self> {
        if components.len() != grid.dim() {
            return Err(TopoError::ComponentMismatch {
                expected: grid.dim(),
                found: components.len(),
            });
        }
        if let Some(c) = components.iter().find(|c| c.len() != grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: c.len() });
        }
        Ok(Self { grid, components })
    }

    pub fn from_scalars(parts: Vec<ScalarField>) -> Result<Self> {
        let grid = parts.first().ok_or(TopoError::ComponentMismatch { expected: 1, found: 0 })?.grid.clone();
        if parts.iter().any(|p| p.grid != grid) {
            return Err(TopoError::GridMismatch);
        }
        Self::new(grid, parts.into_iter().map(|p| p.values).collect())
    }

    pub fn zeros(grid: &GridSpec) -> Self {
        Self { components: vec![vec![0.0; grid.len()]; grid.dim()], grid: grid.clone() }
    }

    /// Samples a vector-valued `f`, which writes `dim` components into its
    /// output slice.
    pub fn from_fn<F>(grid: &GridSpec, f: F) -> Self
    where
        F: Fn(&[f64], &mut [f64]) + Sync,
    {
        let dim = grid.dim();
        let rows: Vec<[f64; 4]> = (0..grid.len())
            .into_par_iter()
            .map(|s| {
                let mut out = [0.0; 4];
                f(&grid.coords(s)[..dim], &mut out[..dim]);
                out
            })
            .collect();
        let components = (0..dim).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
        Self { grid: grid.clone(), components }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.components
    }

    pub fn component_field(&self, c: usize) -> ScalarField {
        ScalarField { grid: self.grid.clone(), values: self.components[c].clone() }
    }

    pub fn into_components(self) -> Vec<Vec<f64>> {
        self.components
    }

    /// Site-wise Euclidean dot product.
    pub fn dot(&self, other: &VectorField) -> Result<ScalarField> {
        if self.grid != other.grid {
            return Err(TopoError::GridMismatch);
        }
        let values = (0..self.grid.len())
            .map(|s| {
                self.components
                    .iter()
                    .zip(&other.components)
                    .map(|(a, b)| a[s] * b[s])
                    .sum()
            })
            .collect();
        Ok(ScalarField { grid: self.grid.clone(), values })
    }

    /// Multiplies every component by a scalar field.
    pub fn scaled_by(&self, s: &ScalarField) -> Result<VectorField> {
        if self.grid != s.grid {
            return Err(TopoError::GridMismatch);
        }
        let components = self
            .components
            .iter()
            .map(|c| c.iter().zip(&s.values).map(|(a, b)| a * b).collect())
            .collect();
        Ok(VectorField { grid: self.grid.clone(), components })
    }
}
