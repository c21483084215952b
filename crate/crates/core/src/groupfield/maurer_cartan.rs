use rayon::prelude::*;

use super::euler::{euler_mc_jet, EulerAngleField};
use super::quat::Quat;
use super::GroupElementField;
use crate::error::{Result, TopoError};
use crate::lattice::{central2, GridSpec, ScalarField};
use crate::liealg::{structure_constants, LieAlgebraSpec};
use crate::topo::GaugePotential;
#[cfg(test)]
use crate::topo::index_pairs;

/// Index pairs `(i, j)`, `i < j`, of a 3d grid, in storage order.
const PAIRS3: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Clone, Copy, Debug)]
pub enum McScheme<'a> {
    /// Entrywise central differences of `g`, projected onto su(2).
    Central2,
    /// Exact derivatives through the Euler chart.
    EulerAnalytic(&'a EulerAngleField),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatnessScheme {
    Central2,
    /// Uses the exact `dV` carried by the field.
    Exact,
}

/// `V^a_i` per site, optionally with its exact exterior derivative.
#[derive(Debug, Clone)]
pub struct MaurerCartanField {
    grid: GridSpec,
    /// `v[3 * i + a]`.
    v: Vec<Vec<f64>>,
    /// `dv[3 * pair + a]` for pairs `01, 02, 12`.
    dv: Option<Vec<Vec<f64>>>,
    hermitian_residue: f64,
}

impl MaurerCartanField {
    pub fn new(grid: GridSpec, v: Vec<Vec<f64>>) -> Result<Self> {
        grid.require_dim(3)?;
        if v.len() != 9 {
            return Err(TopoError::ComponentMismatch { expected: 9, found: v.len() });
        }
        if let Some(c) = v.iter().find(|c| c.len() != grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: c.len() });
        }
        Ok(Self { grid, v, dv: None, hermitian_residue: 0.0 })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `V^a_i` as a flat site array.
    pub fn component(&self, i: usize, a: usize) -> &[f64] {
        &self.v[3 * i + a]
    }

    pub fn at(&self, site: usize) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|a| self.v[3 * i + a][site]))
    }

    pub fn exact_dv(&self) -> Option<&[Vec<f64>]> {
        self.dv.as_deref()
    }

    /// Largest `|Re tr(g⁻¹∂g)/2|` discarded by the su(2) projection.
    pub fn hermitian_residue(&self) -> f64 {
        self.hermitian_residue
    }

    /// The Lie-algebra component `a` as an Abelian potential `A_i = V^a_i`.
    pub fn abelian_component(&self, a: usize) -> GaugePotential {
        let comps = (0..3).map(|i| self.v[3 * i + a].clone()).collect();
        let pot = GaugePotential::abelian(self.grid.clone(), comps).expect("3 components");
        match &self.dv {
            Some(dv) => pot
                .with_exterior_derivative((0..3).map(|p| dv[3 * p + a].clone()).collect())
                .expect("3 pairs"),
            None => pot,
        }
    }

    /// All three components as an su(2) potential, carrying the exact `dV`
    /// when present.
    pub fn to_potential(&self) -> GaugePotential {
        let f = structure_constants(&LieAlgebraSpec::su2()).expect("su(2) closes");
        let pot = GaugePotential::non_abelian(self.grid.clone(), f, self.v.clone()).expect("9 components");
        match &self.dv {
            Some(dv) => pot.with_exterior_derivative(dv.clone()).expect("9 components"),
            None => pot,
        }
    }

    /// Exterior derivative `∂_iV^a_j − ∂_jV^a_i`, exact or by central differences.
    pub fn exterior_derivative(&self, scheme: FlatnessScheme) -> Result<Vec<Vec<f64>>> {
        match scheme {
            FlatnessScheme::Exact => self.dv.clone().ok_or(TopoError::MissingGradients),
            FlatnessScheme::Central2 => {
                let mut out = Vec::with_capacity(9);
                for &(i, j) in &PAIRS3 {
                    for a in 0..3 {
                        let dij = central2(self.component(j, a), &self.grid, i)?;
                        let dji = central2(self.component(i, a), &self.grid, j)?;
                        out.push(dij.iter().zip(&dji).map(|(x, y)| x - y).collect());
                    }
                }
                Ok(out)
            }
        }
    }
}

/// `V^a_i = tr(iσ_a g⁻¹∂_i g)`.
pub fn maurer_cartan(g: &GroupElementField, scheme: McScheme<'_>) -> Result<MaurerCartanField> {
    let grid = g.grid().clone();
    match scheme {
        McScheme::Central2 => {
            let q = g.elements();
            let comps: Vec<Vec<f64>> = (0..4).map(|c| q.iter().map(|x| x.0[c]).collect()).collect();
            let mut v = vec![Vec::new(); 9];
            let mut residue: f64 = 0.0;
            for i in 0..3 {
                let dq = comps.iter().map(|c| central2(c, &grid, i)).collect::<Result<Vec<_>>>()?;
                let l: Vec<Quat> = (0..grid.len())
                    .into_par_iter()
                    .map(|s| q[s].conj() * Quat([dq[0][s], dq[1][s], dq[2][s], dq[3][s]]))
                    .collect();
                residue = l.iter().fold(residue, |m, x| m.max(x.0[0].abs()));
                for a in 0..3 {
                    v[3 * i + a] = l.iter().map(|x| 2.0 * x.0[a + 1]).collect();
                }
            }
            let mut out = MaurerCartanField::new(grid, v)?;
            out.hermitian_residue = residue;
            Ok(out)
        }
        McScheme::EulerAnalytic(angles) => {
            if angles.grid() != &grid {
                return Err(TopoError::GridMismatch);
            }
            if !angles.has_gradients() {
                return Err(TopoError::MissingGradients);
            }
            let jets: Vec<([[f64; 3]; 3], [[f64; 3]; 3])> = (0..grid.len())
                .into_par_iter()
                .map(|s| euler_mc_jet(&angles.jet_at(s).expect("gradients present")))
                .collect();
            let v = (0..9).map(|k| jets.iter().map(|j| j.0[k / 3][k % 3]).collect()).collect();
            let dv = (0..9).map(|k| jets.iter().map(|j| j.1[k / 3][k % 3]).collect()).collect();
            let mut out = MaurerCartanField::new(grid, v)?;
            out.dv = Some(dv);
            Ok(out)
        }
    }
}

/// Per-site norm of `∂_iV^a_j − ∂_jV^a_i + ε_abc V^b_i V^c_j` over all `a`
/// and `i < j`. Vanishes for pure gauges (`d(g⁻¹dg) = −g⁻¹dg ∧ g⁻¹dg`).
pub fn flatness_residual(v: &MaurerCartanField, scheme: FlatnessScheme) -> Result<ScalarField> {
    let dv = v.exterior_derivative(scheme)?;
    let grid = v.grid();
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            let m = v.at(s);
            let mut acc = 0.0;
            for (p, &(i, j)) in PAIRS3.iter().enumerate() {
                for a in 0..3 {
                    let (b, c) = ((a + 1) % 3, (a + 2) % 3);
                    let quad = m[i][b] * m[j][c] - m[i][c] * m[j][b];
                    let r = dv[3 * p + a][s] + quad;
                    acc += r * r;
                }
            }
            acc.sqrt()
        })
        .collect();
    ScalarField::new(grid.clone(), values)
}

/// `ε^{ijk} tr(L_i L_j L_k)` with `L_i = g⁻¹∂_i g`, evaluated as 2×2 matrix
/// traces through quaternion products.
pub fn trace_cubed_density(v: &MaurerCartanField) -> ScalarField {
    let grid = v.grid();
    const PERMS: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            let m = v.at(s);
            // Matrix L_i is the pure quaternion with vector part V_i / 2.
            let l: [Quat; 3] = std::array::from_fn(|i| Quat::pure(m[i]).scale(0.5));
            PERMS
                .iter()
                .map(|(p, sign)| sign * 2.0 * (l[p[0]] * l[p[1]] * l[p[2]]).scalar())
                .sum()
        })
        .collect();
    ScalarField::new(grid.clone(), values).expect("grid length")
}

/// `V¹∧V²∧V³` as a density: `det(V^a_i)`.
pub fn volume_form_density(v: &MaurerCartanField) -> ScalarField {
    let grid = v.grid();
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            let m = v.at(s);
            // rows i, columns a
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        })
        .collect();
    ScalarField::new(grid.clone(), values).expect("grid length")
}
