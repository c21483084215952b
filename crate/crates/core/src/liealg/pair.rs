use num_complex::Complex64;
use serde::Serialize;

use super::algebra::{
    commutator, frobenius_inner, structure_constants, CMatrix, LieAlgebraSpec, StructureConstants,
};
use crate::error::{Result, TopoError};

/// A split of the generators of `G` into `T` (spanning `H`) and the rest `S`.
#[derive(Debug, Clone)]
pub struct SymmetricPairSpec {
    algebra: LieAlgebraSpec,
    structure: StructureConstants,
    t_indices: Vec<usize>,
    s_indices: Vec<usize>,
}

impl SymmetricPairSpec {
    /// `S` is the complement of `t_indices`.
    pub fn new(algebra: LieAlgebraSpec, t_indices: Vec<usize>) -> Result<Self> {
        let s_indices = (0..algebra.dim()).filter(|i| !t_indices.contains(i)).collect();
        Self::with_split(algebra, t_indices, s_indices)
    }

    pub fn with_split(
        algebra: LieAlgebraSpec,
        t_indices: Vec<usize>,
        s_indices: Vec<usize>,
    ) -> Result<Self> {
        let dim = algebra.dim();
        let mut seen = vec![0usize; dim];
        for &i in t_indices.iter().chain(&s_indices) {
            if i >= dim {
                return Err(TopoError::BadPartition(format!("label {i} >= dim G = {dim}")));
            }
            seen[i] += 1;
        }
        if t_indices.is_empty() {
            return Err(TopoError::BadPartition("H needs at least one generator".into()));
        }
        if let Some(i) = seen.iter().position(|&n| n != 1) {
            return Err(TopoError::BadPartition(format!(
                "label {i} appears {} times across T and S",
                seen[i]
            )));
        }
        let structure = structure_constants(&algebra)?;
        Ok(Self { algebra, structure, t_indices, s_indices })
    }

    pub fn su2_u1() -> Self {
        Self::new(LieAlgebraSpec::su2(), vec![2]).expect("valid split")
    }

    pub fn algebra(&self) -> &LieAlgebraSpec {
        &self.algebra
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn t_indices(&self) -> &[usize] {
        &self.t_indices
    }

    pub fn s_indices(&self) -> &[usize] {
        &self.s_indices
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.t_indices.len()
    }

    /// `h^{aMN}` from `[T^a, S^M] = h^{aMN} S^N`, with `a`, `M`, `N` local
    /// positions in `t_indices` / `s_indices`.
    pub fn h(&self, a: usize, m: usize, n: usize) -> f64 {
        self.structure.get(self.t_indices[a], self.s_indices[m], self.s_indices[n])
    }

    /// Structure constants of `H` in the `T` basis.
    pub fn h_structure(&self) -> StructureConstants {
        self.structure.restrict(&self.t_indices)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub algebra: String,
    pub dim_g: usize,
    pub dim_h: usize,
    pub t_indices: Vec<usize>,
    pub s_indices: Vec<usize>,
    /// `[T, T] ⊂ span(T)`.
    pub t_closure: PairCheck,
    /// `[T, S] ⊂ span(S)`.
    pub s_representation: PairCheck,
    /// `[S^M, S^N] = κ h^{aMN} T^a` after fitting κ.
    pub s_closure: PairCheck,
    pub closure_constant: Option<f64>,
    /// `dim G > 3 dim H`; informational only.
    pub dimension_condition: bool,
    pub jacobi_residual: f64,
    pub tolerance: f64,
    pub symmetric: bool,
}

fn span_combination(alg: &LieAlgebraSpec, coeffs: &[f64], labels: &[usize]) -> CMatrix {
    let n = alg.matrix_dim();
    labels.iter().fold(CMatrix::zeros(n, n), |acc, &l| {
        acc + alg.generator(l) * Complex64::new(coeffs[l], 0.0)
    })
}

/// Worst Frobenius distance of `[X_a, X_b]` from `span(target)` over the
/// given label pairs. The in-span part is taken from the structure
/// constants, so anything outside the span shows up in the residual.
fn span_residual(
    pair: &SymmetricPairSpec,
    left: &[usize],
    right: &[usize],
    target: &[usize],
) -> f64 {
    let alg = &pair.algebra;
    let d = alg.dim();
    let mut worst: f64 = 0.0;
    for &a in left {
        for &b in right {
            let comm = commutator(alg.generator(a), alg.generator(b));
            let coeffs: Vec<f64> = (0..d).map(|c| pair.structure.get(a, b, c)).collect();
            let inside = span_combination(alg, &coeffs, target);
            worst = worst.max((comm - inside).norm());
        }
    }
    worst
}

pub fn check_symmetric_pair(pair: &SymmetricPairSpec, tol: f64) -> PairReport {
    let t = &pair.t_indices;
    let s = &pair.s_indices;
    let alg = &pair.algebra;

    let t_res = span_residual(pair, t, t, t);
    let s_rep = if s.is_empty() { 0.0 } else { span_residual(pair, t, s, s) };

    // Fit κ in [S^M, S^N] ≈ κ Σ_a h^{aMN} T^a by least squares over all pairs.
    let mut targets = Vec::new();
    let mut models = Vec::new();
    for (m, &sm) in s.iter().enumerate() {
        for (nn, &sn) in s.iter().enumerate() {
            let r = commutator(alg.generator(sm), alg.generator(sn));
            let n = alg.matrix_dim();
            let p = (0..t.len()).fold(CMatrix::zeros(n, n), |acc, a| {
                acc + alg.generator(t[a]) * Complex64::new(pair.h(a, m, nn), 0.0)
            });
            targets.push(r);
            models.push(p);
        }
    }
    let (closure_constant, s_clo) = if s.is_empty() {
        (None, 0.0)
    } else {
        let num: f64 = targets.iter().zip(&models).map(|(r, p)| frobenius_inner(r, p)).sum();
        let den: f64 = models.iter().map(|p| frobenius_inner(p, p)).sum();
        let kappa = if den > 0.0 { num / den } else { 0.0 };
        let worst = targets
            .iter()
            .zip(&models)
            .map(|(r, p)| (r - p * Complex64::new(kappa, 0.0)).norm())
            .fold(0.0, f64::max);
        (Some(kappa), worst)
    };

    let t_closure = PairCheck { passed: t_res < tol, residual: t_res };
    let s_representation = PairCheck { passed: s_rep < tol, residual: s_rep };
    let s_closure = PairCheck { passed: s_clo < tol, residual: s_clo };
    let symmetric = t_closure.passed && s_representation.passed && s_closure.passed;
    PairReport {
        algebra: alg.name().to_string(),
        dim_g: pair.dim_g(),
        dim_h: pair.dim_h(),
        t_indices: t.clone(),
        s_indices: s.clone(),
        t_closure,
        s_representation,
        s_closure,
        closure_constant,
        dimension_condition: pair.dim_g() > 3 * pair.dim_h(),
        jacobi_residual: pair.structure.jacobi_residual(),
        tolerance: tol,
        symmetric,
    }
}
