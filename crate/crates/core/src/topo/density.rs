use rayon::prelude::*;
use serde::Serialize;

use super::epsilon::{epsilon_table, pair_slot};
use super::potential::{field_strength, FieldStrength, GaugePotential};
use crate::error::{Result, TopoError};
use crate::lattice::{
    curl, divergence, l2_norm, max_norm, volume_integral, ScalarField, VectorField,
};
use crate::liealg::StructureConstants;

/// Nonzero entries `(a, b, c, f_abc)`.
fn nonzero_structure(f: &StructureConstants) -> Vec<(usize, usize, usize, f64)> {
    let d = f.dim();
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let v = f.get(a, b, c);
                if v != 0.0 {
                    out.push((a, b, c, v));
                }
            }
        }
    }
    out
}

fn require_abelian(pot: &GaugePotential) -> Result<()> {
    if pot.lie_dim() != 1 {
        return Err(TopoError::ComponentMismatch { expected: 1, found: pot.lie_dim() });
    }
    Ok(())
}

/// `(1/4) ε^{μναβ} F^a_{μν} F^a_{αβ} = 2(F₀₁F₂₃ − F₀₂F₁₃ + F₀₃F₁₂)`, summed over `a`.
pub fn cp_density_4d(f: &FieldStrength) -> Result<ScalarField> {
    let grid = f.grid();
    grid.require_dim(4)?;
    // pairs: 01 02 03 12 13 23
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            (0..f.lie_dim())
                .map(|a| {
                    let p = |k: usize| f.pair_component(k, a)[s];
                    2.0 * (p(0) * p(5) - p(1) * p(4) + p(2) * p(3))
                })
                .sum()
        })
        .collect();
    ScalarField::new(grid.clone(), values)
}

/// `(1/2) ε^{μν} F_{μν} = F₀₁`.
pub fn cp_density_2d(f: &FieldStrength) -> Result<ScalarField> {
    f.grid().require_dim(2)?;
    if f.lie_dim() != 1 {
        return Err(TopoError::ComponentMismatch { expected: 1, found: f.lie_dim() });
    }
    ScalarField::new(f.grid().clone(), f.pair_component(0, 0).to_vec())
}

/// Chern-Simons current: `ε^{μν}A_ν` in 2d, and in 4d
/// `ε^{μαβγ}(A^a_α ∂_βA^a_γ + (1/3) f^{abc} A^a_α A^b_β A^c_γ)`.
pub fn cs_current(pot: &GaugePotential) -> Result<VectorField> {
    let grid = pot.grid();
    match grid.dim() {
        2 => {
            require_abelian(pot)?;
            let c0 = pot.component(1, 0).to_vec();
            let c1 = pot.component(0, 0).iter().map(|x| -x).collect();
            VectorField::new(grid.clone(), vec![c0, c1])
        }
        4 => {
            let cubic = pot.nonabelian_structure()?.map(nonzero_structure).unwrap_or_default();
            let da = pot.exterior_derivative()?;
            let d = pot.lie_dim();
            let table = epsilon_table(4);
            let per_site: Vec<[f64; 4]> = (0..grid.len())
                .into_par_iter()
                .map(|s| {
                    let a = |mu: usize, x: usize| pot.component(mu, x)[s];
                    let dab = |b: usize, c: usize, x: usize| match pair_slot(4, b, c) {
                        Some((slot, sign)) => sign * da[slot * d + x][s],
                        None => 0.0,
                    };
                    let mut out = [0.0; 4];
                    for e in table {
                        let [mu, al, be, ga] = e.perm;
                        let mut acc = 0.0;
                        for x in 0..d {
                            // ε A_α ∂_β A_γ = ½ ε A_α (dA)_{βγ}
                            acc += 0.5 * a(al, x) * dab(be, ga, x);
                        }
                        for &(x, y, z, fv) in &cubic {
                            acc += fv * a(al, x) * a(be, y) * a(ga, z) / 3.0;
                        }
                        out[mu] += e.sign * acc;
                    }
                    out
                })
                .collect();
            let comps = (0..4).map(|mu| per_site.iter().map(|c| c[mu]).collect()).collect();
            VectorField::new(grid.clone(), comps)
        }
        found => Err(TopoError::WrongDimension { expected: "2 or 4".into(), found }),
    }
}

/// Chern-Pontryagin density for the dimension of the potential's grid.
pub fn cp_density(pot: &GaugePotential) -> Result<ScalarField> {
    let f = field_strength(pot)?;
    match pot.grid().dim() {
        2 => cp_density_2d(&f),
        4 => cp_density_4d(&f),
        found => Err(TopoError::WrongDimension { expected: "2 or 4".into(), found }),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergenceResidual {
    pub l2: f64,
    pub max: f64,
}

/// Norms of `∂_μC^μ − 𝒜` with central differences for the divergence.
pub fn divergence_identity_residual(pot: &GaugePotential) -> Result<DivergenceResidual> {
    let grid = pot.grid();
    if !grid.is_periodic() {
        return Err(TopoError::InvalidGrid("divergence identity needs a periodic grid".into()));
    }
    let div = divergence(&cs_current(pot)?)?;
    let cp = cp_density(pot)?;
    let r: Vec<f64> = div.values().iter().zip(cp.values()).map(|(x, y)| x - y).collect();
    Ok(DivergenceResidual { l2: l2_norm(grid, &r), max: max_norm(&r) })
}

/// `ε^{ijk}(A^a_i ∂_jA^a_k + (1/3) f^{abc} A^a_i A^b_j A^c_k)`.
pub fn cs_density_3d(pot: &GaugePotential) -> Result<ScalarField> {
    let grid = pot.grid();
    grid.require_dim(3)?;
    let cubic = pot.nonabelian_structure()?.map(nonzero_structure).unwrap_or_default();
    let da = pot.exterior_derivative()?;
    let d = pot.lie_dim();
    let table = epsilon_table(3);
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            let a = |i: usize, x: usize| pot.component(i, x)[s];
            // pairs 01 02 12
            let quad: f64 = (0..d)
                .map(|x| {
                    a(0, x) * da[2 * d + x][s] - a(1, x) * da[d + x][s] + a(2, x) * da[x][s]
                })
                .sum();
            let mut cub = 0.0;
            if !cubic.is_empty() {
                for e in table {
                    let [i, j, k, _] = e.perm;
                    for &(x, y, z, fv) in &cubic {
                        cub += e.sign * fv * a(i, x) * a(j, y) * a(k, z);
                    }
                }
            }
            quad + cub / 3.0
        })
        .collect();
    ScalarField::new(grid.clone(), values)
}

/// The 1d Chern-Simons form is `A₁` itself.
pub fn cs_1d(pot: &GaugePotential) -> Result<ScalarField> {
    pot.grid().require_dim(1)?;
    require_abelian(pot)?;
    ScalarField::new(pot.grid().clone(), pot.component(0, 0).to_vec())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EndpointCheck {
    pub integral: f64,
    pub endpoint_difference: f64,
    pub gap: f64,
}

/// Compares `∫A₁` with `θ(end) − θ(start)` for `A₁ = ∂θ`.
pub fn cs_1d_endpoint_check(pot: &GaugePotential, theta: &ScalarField) -> Result<EndpointCheck> {
    if theta.grid() != pot.grid() {
        return Err(TopoError::GridMismatch);
    }
    if pot.grid().is_periodic() {
        return Err(TopoError::PeriodicGrid);
    }
    let integral = volume_integral(&cs_1d(pot)?);
    let v = theta.values();
    let endpoint_difference = v[v.len() - 1] - v[0];
    Ok(EndpointCheck { integral, endpoint_difference, gap: (integral - endpoint_difference).abs() })
}

/// `∫ v·(∇×v)` with a central-difference curl.
pub fn helicity(v: &VectorField) -> Result<f64> {
    v.grid().require_dim(3)?;
    let w = curl(v)?;
    Ok(volume_integral(&v.dot(&w)?))
}

/// `∫ v·ω` for a supplied vorticity (or magnetic field).
pub fn helicity_with(v: &VectorField, omega: &VectorField) -> Result<f64> {
    v.grid().require_dim(3)?;
    Ok(volume_integral(&v.dot(omega)?))
}
