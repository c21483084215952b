//! SU(2)-valued lattice fields, their Maurer-Cartan forms `g⁻¹dg`, the
//! flatness relation, and the winding number of `tr(g⁻¹dg)³`.
//!
//! Maurer-Cartan components follow `g⁻¹∂_i g = V^a_i T_a` with
//! `T_a = σ_a / 2i`, so `V^a_i = tr(iσ_a g⁻¹∂_i g)`.

mod euler;
mod maurer_cartan;
mod quat;
mod winding;

use rayon::prelude::*;

pub use euler::{from_euler, EulerAngleField, EulerJet};
pub use maurer_cartan::{
    flatness_residual, maurer_cartan, trace_cubed_density, volume_form_density, FlatnessScheme,
    MaurerCartanField, McScheme,
};
pub use quat::Quat;
pub use winding::{boundary_deviation, winding_number, WindingReport, WINDING_NORMALIZATION};

use crate::error::{Result, TopoError};
use crate::lattice::{GridSpec, RawField};

/// Unit-norm tolerance for stored group elements.
pub const UNIT_TOL: f64 = 1e-12;

/// One unit quaternion per site of a 3d grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElementField {
    grid: GridSpec,
    q: Vec<Quat>,
}

impl GroupElementField {
    pub fn new(grid: GridSpec, q: Vec<Quat>) -> Result<Self> {
        grid.require_dim(3)?;
        if q.len() != grid.len() {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: q.len() });
        }
        if let Some(bad) = q.iter().find(|x| (x.norm() - 1.0).abs() > UNIT_TOL) {
            return Err(TopoError::Format(format!(
                "group element off the unit sphere (|q| = {})",
                bad.norm()
            )));
        }
        Ok(Self { grid, q })
    }

    pub fn identity(grid: &GridSpec) -> Result<Self> {
        Self::constant(grid, Quat::IDENTITY)
    }

    pub fn constant(grid: &GridSpec, q: Quat) -> Result<Self> {
        Self::new(grid.clone(), vec![q; grid.len()])
    }

    /// Samples `f` and renormalizes each value onto the unit sphere.
    pub fn from_fn<F>(grid: &GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Quat + Sync,
    {
        let q = (0..grid.len())
            .into_par_iter()
            .map(|s| f(&grid.coords(s)[..3]).normalized())
            .collect();
        Self::new(grid.clone(), q)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn elements(&self) -> &[Quat] {
        &self.q
    }

    pub fn at(&self, site: usize) -> Quat {
        self.q[site]
    }

    /// Site-wise product `self · other`.
    pub fn product(&self, other: &GroupElementField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(TopoError::GridMismatch);
        }
        let q = self.q.iter().zip(&other.q).map(|(a, b)| (*a * *b).normalized()).collect();
        Self::new(self.grid.clone(), q)
    }

    /// Constant left multiplication `h₀ · g`.
    pub fn left_multiply(&self, h0: Quat) -> Self {
        Self { grid: self.grid.clone(), q: self.q.iter().map(|q| (h0 * *q).normalized()).collect() }
    }

    pub fn to_raw(&self) -> RawField {
        let data = (0..4).map(|c| self.q.iter().map(|q| q.0[c]).collect()).collect();
        RawField::new(self.grid.clone(), data).expect("consistent layout")
    }

    pub fn from_raw(raw: RawField) -> Result<Self> {
        if raw.components() != 4 {
            return Err(TopoError::ComponentMismatch { expected: 4, found: raw.components() });
        }
        let n = raw.grid.len();
        let q = (0..n)
            .map(|s| Quat([raw.data[0][s], raw.data[1][s], raw.data[2][s], raw.data[3][s]]))
            .collect();
        Self::new(raw.grid, q)
    }
}
