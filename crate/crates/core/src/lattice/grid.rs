use serde::{Deserialize, Serialize};

use crate::error::{Result, TopoError};

/// Smallest per-axis sample count; the one-sided face stencil needs three
/// points and the central stencil two neighbours.
pub const MIN_SHAPE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// A regular sample grid in one to four dimensions.
///
/// Sites are stored row-major: the last axis varies fastest. Open grids
/// sample both end points of each axis, periodic grids sample `[origin,
/// origin + n h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    shape: Vec<usize>,
    spacing: Vec<f64>,
    origin: Vec<f64>,
    boundary: Boundary,
}

impl GridSpec {
    pub fn new(shape: Vec<usize>, spacing: Vec<f64>, boundary: Boundary) -> Result<Self> {
        let origin = vec![0.0; shape.len()];
        Self::with_origin(shape, spacing, origin, boundary)
    }

    pub fn with_origin(
        shape: Vec<usize>,
        spacing: Vec<f64>,
        origin: Vec<f64>,
        boundary: Boundary,
    ) -> Result<Self> {
        let dim = shape.len();
        if !(1..=4).contains(&dim) {
            return Err(TopoError::InvalidGrid(format!("dimension {dim} not in 1..=4")));
        }
        if spacing.len() != dim || origin.len() != dim {
            return Err(TopoError::InvalidGrid(
                "shape, spacing and origin must have one entry per axis".into(),
            ));
        }
        if let Some(n) = shape.iter().find(|&&n| n < MIN_SHAPE) {
            return Err(TopoError::InvalidGrid(format!(
                "axis length {n} below the minimum of {MIN_SHAPE}"
            )));
        }
        if spacing.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(TopoError::InvalidGrid("spacings must be positive and finite".into()));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(TopoError::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self { shape, spacing, origin, boundary })
    }

    /// Periodic grid covering `[0, L)` on every axis.
    pub fn periodic(shape: &[usize], lengths: &[f64]) -> Result<Self> {
        if shape.len() != lengths.len() {
            return Err(TopoError::InvalidGrid("one length per axis required".into()));
        }
        let spacing = shape.iter().zip(lengths).map(|(&n, &l)| l / n as f64).collect();
        Self::new(shape.to_vec(), spacing, Boundary::Periodic)
    }

    /// Periodic cube `[0, 2π)^dim` with `n` samples per axis.
    pub fn periodic_cube(dim: usize, n: usize) -> Result<Self> {
        Self::periodic(&vec![n; dim], &vec![std::f64::consts::TAU; dim])
    }

    /// Open grid sampling the closed box `[lower, upper]` including both faces.
    pub fn open(shape: &[usize], lower: &[f64], upper: &[f64]) -> Result<Self> {
        if shape.len() != lower.len() || shape.len() != upper.len() {
            return Err(TopoError::InvalidGrid("one bound per axis required".into()));
        }
        if shape.iter().any(|&n| n < 2) {
            return Err(TopoError::InvalidGrid("open axes need at least two samples".into()));
        }
        let spacing = shape
            .iter()
            .zip(lower.iter().zip(upper))
            .map(|(&n, (&a, &b))| (b - a) / (n - 1) as f64)
            .collect();
        Self::with_origin(shape.to_vec(), spacing, lower.to_vec(), Boundary::Open)
    }

    /// Open cube `[lower, upper]^dim`.
    pub fn open_cube(dim: usize, n: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::open(&vec![n; dim], &vec![lower; dim], &vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Largest spacing; the `h` used in convergence studies.
    pub fn max_spacing(&self) -> f64 {
        self.spacing.iter().copied().fold(0.0, f64::max)
    }

    /// Distance between consecutive sites along `axis` in the flat layout.
    pub fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }

    pub fn index_of(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    /// Per-axis indices of a flat site number.
    pub fn multi_index(&self, mut site: usize) -> [usize; 4] {
        let mut out = [0; 4];
        for axis in (0..self.dim()).rev() {
            let n = self.shape[axis];
            out[axis] = site % n;
            site /= n;
        }
        out
    }

    /// Coordinates of a site; entries past `dim` are zero.
    pub fn coords(&self, site: usize) -> [f64; 4] {
        let idx = self.multi_index(site);
        let mut x = [0.0; 4];
        for axis in 0..self.dim() {
            x[axis] = self.origin[axis] + idx[axis] as f64 * self.spacing[axis];
        }
        x
    }

    pub fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim() {
            return Err(TopoError::AxisOutOfRange { axis, dim: self.dim() });
        }
        Ok(())
    }

    pub fn require_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(TopoError::WrongDimension {
                expected: expected.to_string(),
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Same extent and boundary with every spacing halved: `n -> 2n` on
    /// periodic axes and `n -> 2n - 1` on open ones.
    pub fn refined(&self) -> Self {
        let shape = self
            .shape
            .iter()
            .map(|&n| if self.is_periodic() { 2 * n } else { 2 * n - 1 })
            .collect();
        let spacing = self.spacing.iter().map(|h| h / 2.0).collect();
        Self { shape, spacing, origin: self.origin.clone(), boundary: self.boundary }
    }

    /// True when the site touches at least one face of an open grid.
    pub fn on_boundary(&self, site: usize) -> bool {
        if self.is_periodic() {
            return false;
        }
        let idx = self.multi_index(site);
        (0..self.dim()).any(|a| idx[a] == 0 || idx[a] + 1 == self.shape[a])
    }
}
