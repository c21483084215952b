//! Lattice toolkit for gauge-field topology: Chern-Pontryagin densities,
//! Chern-Simons currents and forms, Clebsch potentials, SU(2) Maurer-Cartan
//! forms and symmetric-pair projections, each with numerical checks of the
//! exactness identities that relate them.

pub mod clebsch;
pub mod error;
pub mod groupfield;
pub mod lattice;
pub mod liealg;
pub mod projection;
pub mod synth;
pub mod topo;

pub use error::{Result, TopoError};
pub use lattice::{Boundary, GridSpec, ScalarField, VectorField};

use serde::{Deserialize, Serialize};

/// How derivatives are obtained in identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact gradients threaded through every derivative.
    Analytic,
    /// Second-order central differences on the grid.
    Fd,
}
