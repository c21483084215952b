use serde::Serialize;

use super::grid::GridSpec;
use crate::error::Result;

/// One refinement level of a convergence study.
#[derive(Debug, Clone, Serialize)]
pub struct Level {
    pub shape: Vec<usize>,
    pub h: f64,
    pub error: f64,
}

/// Least-squares slope of `log(error)` against `log(h)`.
///
/// Returns `f64::INFINITY` when any error is exactly zero (the scheme is
/// exact on the data) and `NAN` for fewer than two samples.
pub fn convergence_order(samples: &[(f64, f64)]) -> f64 {
    if samples.len() < 2 {
        return f64::NAN;
    }
    if samples.iter().any(|&(_, e)| e == 0.0) {
        return f64::INFINITY;
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Runs `measure` on each grid and fits the order of the returned errors.
pub fn convergence_study<F>(grids: &[GridSpec], mut measure: F) -> Result<(Vec<Level>, f64)>
where
    F: FnMut(&GridSpec) -> Result<f64>,
{
    let mut levels = Vec::with_capacity(grids.len());
    for g in grids {
        let error = measure(g)?;
        levels.push(Level { shape: g.shape().to_vec(), h: g.max_spacing(), error });
    }
    let samples: Vec<(f64, f64)> = levels.iter().map(|l| (l.h, l.error)).collect();
    Ok((levels, convergence_order(&samples)))
}

/// `levels` grids starting at `coarse`, each with halved spacing.
pub fn refinement_ladder(coarse: &GridSpec, levels: usize) -> Vec<GridSpec> {
    let mut out = vec![coarse.clone()];
    while out.len() < levels {
        let next = out.last().unwrap().refined();
        out.push(next);
    }
    out
}
