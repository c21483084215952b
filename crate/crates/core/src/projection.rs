//! H-connections `A^a = κ tr(T^a g⁻¹dg)` cut out of a G pure gauge, and the
//! pointwise comparison of their Chern-Simons density with that of G.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, TopoError};
use crate::lattice::{central2, pairwise_sum, volume_integral, GridSpec, ScalarField};
use crate::liealg::{check_symmetric_pair, StructureConstants, SymmetricPairSpec, DEFAULT_TOL};
use crate::topo::{cs_density_3d, epsilon_table, GaugePotential};

/// An H-valued connection obtained from G Maurer-Cartan data.
#[derive(Debug, Clone)]
pub struct ProjectedConnection {
    pub potential: GaugePotential,
    pub pair: SymmetricPairSpec,
    /// `κ` in `A^a = κ tr(T^a L)`.
    pub normalization: f64,
}

/// `κ = 1 / tr(T^a T^a)`, which requires the trace metric to be the same
/// multiple of the identity on every `T` generator.
fn normalization(pair: &SymmetricPairSpec) -> Result<f64> {
    let m = pair.algebra().metric();
    let t = pair.t_indices();
    let diag = m[(t[0], t[0])];
    for &a in t {
        for &b in t {
            let expected = if a == b { diag } else { 0.0 };
            if (m[(a, b)] - expected).abs() > DEFAULT_TOL {
                return Err(TopoError::InvalidAlgebra(
                    "trace metric is not a uniform multiple of the identity on T".into(),
                ));
            }
        }
    }
    Ok(1.0 / diag)
}

/// Projects G-valued `L = g⁻¹dg` (components in the generator basis of
/// `pair.algebra()`) onto `H`. Rejects pairs that fail the symmetric-space
/// conditions.
pub fn project_connection(conn: &GaugePotential, pair: &SymmetricPairSpec) -> Result<ProjectedConnection> {
    let report = check_symmetric_pair(pair, DEFAULT_TOL);
    if !report.symmetric {
        return Err(TopoError::NotSymmetric(format!(
            "closure residuals t={:e} rep={:e} s={:e}",
            report.t_closure.residual, report.s_representation.residual, report.s_closure.residual
        )));
    }
    project_connection_unchecked(conn, pair)
}

/// As [`project_connection`] without the symmetric-pair requirement; used
/// for negative controls.
pub fn project_connection_unchecked(
    conn: &GaugePotential,
    pair: &SymmetricPairSpec,
) -> Result<ProjectedConnection> {
    let dim_g = pair.dim_g();
    if conn.lie_dim() != dim_g {
        return Err(TopoError::ComponentMismatch { expected: dim_g, found: conn.lie_dim() });
    }
    let kappa = normalization(pair)?;
    let metric = pair.algebra().metric();
    let t = pair.t_indices();
    let grid = conn.grid();
    // A^a = κ Σ_b tr(T^a X_b) L^b
    let project = |blocks: &[Vec<f64>], count: usize| -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(count * t.len());
        for blk in 0..count {
            for &ta in t {
                out.push(
                    (0..grid.len())
                        .map(|s| {
                            (0..dim_g).map(|b| kappa * metric[(ta, b)] * blocks[blk * dim_g + b][s]).sum()
                        })
                        .collect(),
                );
            }
        }
        out
    };
    let comps = project(conn.components(), grid.dim());
    let h = pair.h_structure();
    let mut potential = if t.len() == 1 {
        GaugePotential::abelian(grid.clone(), comps)?
    } else {
        GaugePotential::non_abelian(grid.clone(), h, comps)?
    };
    if conn.has_exact_derivative() {
        let da = conn.exterior_derivative()?;
        potential = potential.with_exterior_derivative(project(&da, da.len() / dim_g))?;
    }
    Ok(ProjectedConnection { potential, pair: pair.clone(), normalization: kappa })
}

/// `ε^{ijk} tr(L_i L_j L_k)` for G-valued `L` in the generator basis.
pub fn trace_cubed_density(conn: &GaugePotential, pair: &SymmetricPairSpec) -> Result<ScalarField> {
    let grid = conn.grid();
    grid.require_dim(3)?;
    let d = pair.dim_g();
    if conn.lie_dim() != d {
        return Err(TopoError::ComponentMismatch { expected: d, found: conn.lie_dim() });
    }
    let tr3 = pair.algebra().trace3();
    let nonzero: Vec<(usize, usize, usize, f64)> = (0..d * d * d)
        .filter(|&k| tr3[k] != 0.0)
        .map(|k| (k / (d * d), (k / d) % d, k % d, tr3[k]))
        .collect();
    let table = epsilon_table(3);
    let values = (0..grid.len())
        .into_par_iter()
        .map(|s| {
            let l = |i: usize, a: usize| conn.component(i, a)[s];
            let mut acc = 0.0;
            for e in table {
                let [i, j, k, _] = e.perm;
                for &(a, b, c, t) in &nonzero {
                    acc += e.sign * t * l(i, a) * l(j, b) * l(k, c);
                }
            }
            acc
        })
        .collect();
    ScalarField::new(grid.clone(), values)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub cs_h: f64,
    pub cs_g: f64,
    /// `cs_h / cs_g`; `None` when `cs_g` sits at the numerical floor.
    pub ratio: Option<f64>,
    /// Relative standard deviation of the pointwise density ratio.
    pub constancy: Option<f64>,
    pub mean_pointwise_ratio: Option<f64>,
    pub sites_used: usize,
    pub threshold: f64,
    pub indeterminate: bool,
    pub normalization: f64,
    pub dimension_condition: bool,
}

/// Densities below this are treated as zero.
pub const DENSITY_FLOOR: f64 = 1e-12;
/// Sites enter the ratio statistic when `|cs_G| > RATIO_CUTOFF · max|cs_G|`.
pub const RATIO_CUTOFF: f64 = 1e-3;

/// Compares the H Chern-Simons density of the projected connection with the
/// G density `ε^{ijk} tr(L_iL_jL_k)` of the pure gauge.
pub fn cs_coincidence_check(projected: &ProjectedConnection, conn: &GaugePotential) -> Result<CoincidenceReport> {
    let pair = &projected.pair;
    let dens_h = cs_density_3d(&projected.potential)?;
    let dens_g = trace_cubed_density(conn, pair)?;
    let cs_h = volume_integral(&dens_h);
    let cs_g = volume_integral(&dens_g);
    let peak = dens_g.max_abs();
    let threshold = (RATIO_CUTOFF * peak).max(DENSITY_FLOOR);
    let ratios: Vec<f64> = dens_h
        .values()
        .iter()
        .zip(dens_g.values())
        .filter(|(_, g)| g.abs() > threshold)
        .map(|(h, g)| h / g)
        .collect();
    let indeterminate = peak < DENSITY_FLOOR || ratios.is_empty();
    let (mean, constancy) = if indeterminate {
        (None, None)
    } else {
        let n = ratios.len() as f64;
        let mean = pairwise_sum(&ratios) / n;
        let dev: Vec<f64> = ratios.iter().map(|r| (r - mean).powi(2)).collect();
        let var = pairwise_sum(&dev) / n;
        (Some(mean), Some(var.sqrt() / mean.abs()))
    };
    let ratio = if cs_g.abs() < DENSITY_FLOOR || indeterminate { None } else { Some(cs_h / cs_g) };
    Ok(CoincidenceReport {
        cs_h,
        cs_g,
        ratio,
        constancy,
        mean_pointwise_ratio: mean,
        sites_used: ratios.len(),
        threshold,
        indeterminate,
        normalization: projected.normalization,
        dimension_condition: pair.dim_g() > 3 * pair.dim_h(),
    })
}

/// Algebra-level `g⁻¹∂_i g` for `g = exp(X)`, `X = X^a T_a`, truncated as
/// `∂X + ½[∂X, X] + (1/6)[[∂X, X], X]` with central differences for `∂X`.
pub fn exp_series_maurer_cartan(
    grid: &GridSpec,
    structure: &StructureConstants,
    x: &[Vec<f64>],
) -> Result<GaugePotential> {
    let d = structure.dim();
    if x.len() != d {
        return Err(TopoError::ComponentMismatch { expected: d, found: x.len() });
    }
    let mut comps = Vec::with_capacity(grid.dim() * d);
    for i in 0..grid.dim() {
        let dx = x.iter().map(|c| central2(c, grid, i)).collect::<Result<Vec<_>>>()?;
        let per_site: Vec<Vec<f64>> = (0..grid.len())
            .into_par_iter()
            .map(|s| {
                let xs: Vec<f64> = x.iter().map(|c| c[s]).collect();
                let ds: Vec<f64> = dx.iter().map(|c| c[s]).collect();
                let mut c1 = vec![0.0; d];
                structure.bracket(&ds, &xs, &mut c1);
                let mut c2 = vec![0.0; d];
                structure.bracket(&c1, &xs, &mut c2);
                (0..d).map(|a| ds[a] + 0.5 * c1[a] + c2[a] / 6.0).collect()
            })
            .collect();
        for a in 0..d {
            comps.push(per_site.iter().map(|v| v[a]).collect());
        }
    }
    GaugePotential::non_abelian(grid.clone(), structure.clone(), comps)
}
