use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TopoError};

pub type CMatrix = DMatrix<Complex64>;

/// Absolute tolerance on commutator and Hermiticity residuals.
pub const DEFAULT_TOL: f64 = 1e-10;

const HERMITICITY_TOL: f64 = 1e-12;

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Real Frobenius inner product `Re tr(a† b)`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    (a * b).trace()
}

/// A basis of anti-Hermitian `n × n` matrices with its trace metric
/// `tr(X_a X_b)`.
#[derive(Debug, Clone)]
pub struct LieAlgebraSpec {
    name: String,
    generators: Vec<CMatrix>,
    metric: DMatrix<f64>,
    metric_inverse: DMatrix<f64>,
}

impl LieAlgebraSpec {
    pub fn new(name: impl Into<String>, generators: Vec<CMatrix>) -> Result<Self> {
        let name = name.into();
        let n = generators
            .first()
            .ok_or_else(|| TopoError::InvalidAlgebra("no generators".into()))?
            .nrows();
        for (i, g) in generators.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(TopoError::InvalidAlgebra(format!("generator {i} is not {n}x{n}")));
            }
            let herm = (g.adjoint() + g).norm();
            if herm > HERMITICITY_TOL {
                return Err(TopoError::InvalidAlgebra(format!(
                    "generator {i} is not anti-Hermitian (residual {herm:e})"
                )));
            }
        }
        let dim = generators.len();
        let mut metric = DMatrix::<f64>::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                metric[(a, b)] = trace_product(&generators[a], &generators[b]).re;
            }
        }
        let asym = (&metric - metric.transpose()).abs().max();
        if asym > HERMITICITY_TOL {
            return Err(TopoError::InvalidAlgebra(format!("trace metric not symmetric ({asym:e})")));
        }
        let neg = -&metric;
        let eig = neg.clone().symmetric_eigen().eigenvalues;
        let (lo, hi) = (eig.min(), eig.max());
        if lo <= 1e-12 * hi.max(1.0) || neg.clone().cholesky().is_none() {
            return Err(TopoError::InvalidAlgebra(
                "trace metric is not negative definite (dependent or non-compact generators)".into(),
            ));
        }
        let metric_inverse = neg.cholesky().unwrap().inverse() * -1.0;
        Ok(Self { name, generators, metric, metric_inverse })
    }

    /// `σ_a / 2i`; `[T_a, T_b] = ε_abc T_c`.
    pub fn su2() -> Self {
        let pauli = pauli_matrices();
        let gens = pauli.iter().map(|s| s * Complex64::new(0.0, -0.5)).collect();
        Self::new("su2", gens).expect("su(2) basis is valid")
    }

    /// `λ_a / 2i` with the Gell-Mann matrices.
    pub fn su3() -> Self {
        let gens = gell_mann_matrices().iter().map(|l| l * Complex64::new(0.0, -0.5)).collect();
        Self::new("su3", gens).expect("su(3) basis is valid")
    }

    /// The single generator `i` acting on C^1.
    pub fn u1() -> Self {
        Self::new("u1", vec![CMatrix::from_element(1, 1, Complex64::i())])
            .expect("u(1) basis is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.generators[0].nrows()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.generators[a]
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// Uniformly rescaled copy `X_a -> c X_a`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g * Complex64::new(c, 0.0)).collect();
        Self::new(format!("{}*{c}", self.name), gens)
    }

    /// Coefficients of `m` in the generator basis, by trace projection.
    pub fn coordinates(&self, m: &CMatrix) -> Vec<f64> {
        let proj: Vec<f64> = self.generators.iter().map(|g| trace_product(m, g).re).collect();
        (0..self.dim())
            .map(|a| (0..self.dim()).map(|b| self.metric_inverse[(a, b)] * proj[b]).sum())
            .collect()
    }

    /// `Σ_a c_a X_a`.
    pub fn combine(&self, coeffs: &[f64]) -> CMatrix {
        let n = self.matrix_dim();
        coeffs
            .iter()
            .zip(&self.generators)
            .fold(CMatrix::zeros(n, n), |acc, (&c, g)| acc + g * Complex64::new(c, 0.0))
    }

    /// `Re tr(X_a X_b X_c)` for all label triples, flattened `a*d*d + b*d + c`.
    pub fn trace3(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let ab = &self.generators[a] * &self.generators[b];
                for c in 0..d {
                    out[(a * d + b) * d + c] = trace_product(&ab, &self.generators[c]).re;
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            name: self.name.clone(),
            matrix_dim: self.matrix_dim(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    (0..g.nrows())
                        .map(|r| (0..g.ncols()).map(|c| [g[(r, c)].re, g[(r, c)].im]).collect())
                        .collect()
                })
                .collect(),
            h_indices: None,
        }
    }
}

/// On-disk algebra definition. `h_indices`, when present, names the
/// generators spanning the subalgebra of a symmetric-pair split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub matrix_dim: usize,
    /// `generators[a][row][col] = [re, im]`.
    pub generators: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_indices: Option<Vec<usize>>,
}

impl AlgebraFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn algebra(&self) -> Result<LieAlgebraSpec> {
        let n = self.matrix_dim;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, rows) in self.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(TopoError::InvalidAlgebra(format!("generator {i} is not {n}x{n}")));
            }
            gens.push(CMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])));
        }
        LieAlgebraSpec::new(self.name.clone(), gens)
    }
}

/// `f_abc` with `[X_a, X_b] = f_abc X_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    f: Vec<f64>,
}

impl StructureConstants {
    pub fn from_tensor(dim: usize, f: Vec<f64>) -> Self {
        assert_eq!(f.len(), dim * dim * dim);
        Self { dim, f }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, f: vec![0.0; dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().all(|&x| x == 0.0)
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    worst = worst.max((self.get(a, b, c) + self.get(b, a, c)).abs());
                }
            }
        }
        worst
    }

    /// Largest `|Σ_e f_abe f_ecd + f_bce f_ead + f_cae f_ebd|`.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for dd in 0..d {
                        let s: f64 = (0..d)
                            .map(|e| {
                                self.get(a, b, e) * self.get(e, c, dd)
                                    + self.get(b, c, e) * self.get(e, a, dd)
                                    + self.get(c, a, e) * self.get(e, b, dd)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Coefficients of `[x, y]` for coefficient vectors `x`, `y`.
    pub fn bracket(&self, x: &[f64], y: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for a in 0..self.dim {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..self.dim {
                let xy = x[a] * y[b];
                if xy == 0.0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += self.get(a, b, c) * xy;
                }
            }
        }
    }

    /// Structure constants of the span of `labels`, assumed closed.
    pub fn restrict(&self, labels: &[usize]) -> Self {
        let d = labels.len();
        let mut f = vec![0.0; d * d * d];
        for (i, &a) in labels.iter().enumerate() {
            for (j, &b) in labels.iter().enumerate() {
                for (k, &c) in labels.iter().enumerate() {
                    f[(i * d + j) * d + k] = self.get(a, b, c);
                }
            }
        }
        Self { dim: d, f }
    }
}

/// Projects every commutator onto the generator basis through the trace
/// metric. Fails when a commutator leaves the span.
pub fn structure_constants(alg: &LieAlgebraSpec) -> Result<StructureConstants> {
    let d = alg.dim();
    let mut f = vec![0.0; d * d * d];
    for a in 0..d {
        for b in 0..d {
            let comm = commutator(alg.generator(a), alg.generator(b));
            let coeffs = alg.coordinates(&comm);
            let residual = (&comm - alg.combine(&coeffs)).norm();
            if residual >= DEFAULT_TOL {
                return Err(TopoError::ClosureFailure { a, b, residual });
            }
            f[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&coeffs);
        }
    }
    Ok(StructureConstants { dim: d, f })
}

pub(crate) fn pauli_matrices() -> [CMatrix; 3] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    ]
}

pub(crate) fn gell_mann_matrices() -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(8);
    let sym = |i: usize, j: usize| {
        let mut m = CMatrix::zeros(3, 3);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m[(j, i)] = Complex64::new(1.0, 0.0);
        m
    };
    let anti = |i: usize, j: usize| {
        let mut m = CMatrix::zeros(3, 3);
        m[(i, j)] = Complex64::new(0.0, -1.0);
        m[(j, i)] = Complex64::new(0.0, 1.0);
        m
    };
    let diag = |d: [f64; 3]| CMatrix::from_diagonal(&nalgebra::DVector::from_fn(3, |i, _| Complex64::new(d[i], 0.0)));
    out.push(sym(0, 1));
    out.push(anti(0, 1));
    out.push(diag([1.0, -1.0, 0.0]));
    out.push(sym(0, 2));
    out.push(anti(0, 2));
    out.push(sym(1, 2));
    out.push(anti(1, 2));
    let r3 = 1.0 / 3f64.sqrt();
    out.push(diag([r3, r3, -2.0 * r3]));
    out
}
