//! Regular-grid fields, finite-difference stencils, quadrature, convergence
//! estimation and the TFF1 file format.

mod convergence;
mod field;
mod grid;
mod quadrature;
mod stencil;
pub mod tff;

pub use convergence::{convergence_order, convergence_study, refinement_ladder, Level};
pub use field::{ScalarField, VectorField};
pub use grid::{Boundary, GridSpec, MIN_SHAPE};
pub use quadrature::{
    integrate_values, l2_norm, max_norm, pairwise_sum, site_weight, surface_flux, volume_integral,
};
pub use stencil::{central2, curl, divergence, gradient, partial_derivative, DerivativeScheme};
pub use tff::RawField;
