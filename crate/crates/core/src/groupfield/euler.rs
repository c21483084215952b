//! The Euler-angle chart `g = e^{T₃β} e^{T₂γ} e^{T₃θ}` and exact
//! Maurer-Cartan data derived from it.

use rayon::prelude::*;

use super::quat::Quat;
use super::GroupElementField;
use crate::error::{Result, TopoError};
use crate::lattice::{GridSpec, ScalarField, VectorField};

/// Angle values `[β, γ, θ]` and their spatial gradients at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerJet {
    pub angles: [f64; 3],
    /// `grad[s][i] = ∂_i φ_s`.
    pub grad: [[f64; 3]; 3],
}

/// Three angle fields on one grid, optionally with exact gradients.
#[derive(Debug, Clone)]
pub struct EulerAngleField {
    grid: GridSpec,
    angles: [ScalarField; 3],
    gradients: Option<[VectorField; 3]>,
}

impl EulerAngleField {
    pub fn new(beta: ScalarField, gamma: ScalarField, theta: ScalarField) -> Result<Self> {
        let grid = beta.grid().clone();
        grid.require_dim(3)?;
        if gamma.grid() != &grid || theta.grid() != &grid {
            return Err(TopoError::GridMismatch);
        }
        Ok(Self { grid, angles: [beta, gamma, theta], gradients: None })
    }

    pub fn with_gradients(mut self, gradients: [VectorField; 3]) -> Result<Self> {
        if gradients.iter().any(|g| g.grid() != &self.grid) {
            return Err(TopoError::GridMismatch);
        }
        self.gradients = Some(gradients);
        Ok(self)
    }

    /// Samples angles and exact gradients from a jet-valued function.
    pub fn from_fn<F>(grid: &GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> EulerJet + Sync,
    {
        grid.require_dim(3)?;
        let jets: Vec<EulerJet> =
            (0..grid.len()).into_par_iter().map(|s| f(&grid.coords(s)[..3])).collect();
        let angle = |k: usize| {
            ScalarField::new(grid.clone(), jets.iter().map(|j| j.angles[k]).collect()).unwrap()
        };
        let grad = |k: usize| {
            VectorField::new(
                grid.clone(),
                (0..3).map(|i| jets.iter().map(|j| j.grad[k][i]).collect()).collect(),
            )
            .unwrap()
        };
        Self::new(angle(0), angle(1), angle(2))?.with_gradients([grad(0), grad(1), grad(2)])
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn beta(&self) -> &ScalarField {
        &self.angles[0]
    }

    pub fn gamma(&self) -> &ScalarField {
        &self.angles[1]
    }

    pub fn theta(&self) -> &ScalarField {
        &self.angles[2]
    }

    pub fn gradients(&self) -> Option<&[VectorField; 3]> {
        self.gradients.as_ref()
    }

    pub fn has_gradients(&self) -> bool {
        self.gradients.is_some()
    }

    pub fn angles_at(&self, site: usize) -> [f64; 3] {
        [
            self.angles[0].values()[site],
            self.angles[1].values()[site],
            self.angles[2].values()[site],
        ]
    }

    pub fn jet_at(&self, site: usize) -> Result<EulerJet> {
        let grads = self.gradients.as_ref().ok_or(TopoError::MissingGradients)?;
        let mut grad = [[0.0; 3]; 3];
        for (s, g) in grads.iter().enumerate() {
            for (i, slot) in grad[s].iter_mut().enumerate() {
                *slot = g.component(i)[site];
            }
        }
        Ok(EulerJet { angles: self.angles_at(site), grad })
    }
}

const HALF_K: Quat = Quat([0.0, 0.0, 0.0, 0.5]);
const HALF_J: Quat = Quat([0.0, 0.0, 0.5, 0.0]);

fn factors(angles: [f64; 3]) -> [Quat; 3] {
    let [b, c, t] = angles.map(|a| 0.5 * a);
    [
        Quat::new(b.cos(), 0.0, 0.0, b.sin()),
        Quat::new(c.cos(), 0.0, c.sin(), 0.0),
        Quat::new(t.cos(), 0.0, 0.0, t.sin()),
    ]
}

/// `∂^{n_0}_β ∂^{n_1}_γ ∂^{n_2}_θ g`: each factor `e^{T φ}` contributes
/// `e^{T φ} T^n`.
fn angle_derivative(fs: &[Quat; 3], orders: [usize; 3]) -> Quat {
    let gens = [HALF_K, HALF_J, HALF_K];
    let mut out = Quat::IDENTITY;
    for k in 0..3 {
        let mut f = fs[k];
        for _ in 0..orders[k] {
            f = f * gens[k];
        }
        out = out * f;
    }
    out
}

pub(crate) fn euler_element(angles: [f64; 3]) -> Quat {
    let fs = factors(angles);
    fs[0] * fs[1] * fs[2]
}

/// Exact `V^a_i` and `(dV)^a_{ij}` (pairs `01, 02, 12`) at one point.
///
/// With `E_s = g⁻¹∂g/∂φ_s`, `V_i = Σ_s E_s ∂_iφ_s` and the antisymmetric
/// derivative only needs `∂E_s/∂φ_t`; angle Hessians cancel.
pub(crate) fn euler_mc_jet(jet: &EulerJet) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let fs = factors(jet.angles);
    let g = fs[0] * fs[1] * fs[2];
    let gi = g.conj();
    let unit = |s: usize| {
        let mut o = [0usize; 3];
        o[s] += 1;
        o
    };
    let dg: [Quat; 3] = std::array::from_fn(|s| angle_derivative(&fs, unit(s)));
    let e: [Quat; 3] = std::array::from_fn(|s| gi * dg[s]);
    // de[t][s] = ∂_t E_s = (∂_t g)† ∂_s g + g† ∂_t ∂_s g
    let de: [[Quat; 3]; 3] = std::array::from_fn(|t| {
        std::array::from_fn(|s| {
            let mut o = unit(s);
            o[t] += 1;
            dg[t].conj() * dg[s] + gi * angle_derivative(&fs, o)
        })
    });

    let mut v = [[0.0; 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        for (a, slot) in row.iter_mut().enumerate() {
            *slot = 2.0 * (0..3).map(|s| e[s].0[a + 1] * jet.grad[s][i]).sum::<f64>();
        }
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut dv = [[0.0; 3]; 3];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for a in 0..3 {
            let mut acc = 0.0;
            for t in 0..3 {
                for s in 0..3 {
                    let w = jet.grad[t][i] * jet.grad[s][j] - jet.grad[t][j] * jet.grad[s][i];
                    acc += de[t][s].0[a + 1] * w;
                }
            }
            dv[p][a] = 2.0 * acc;
        }
    }
    (v, dv)
}

/// Per-site `e^{T₃β} e^{T₂γ} e^{T₃θ}`.
pub fn from_euler(angles: &EulerAngleField) -> GroupElementField {
    let q = (0..angles.grid.len())
        .into_par_iter()
        .map(|s| euler_element(angles.angles_at(s)))
        .collect();
    GroupElementField::new(angles.grid.clone(), q).expect("products of unit quaternions")
}
