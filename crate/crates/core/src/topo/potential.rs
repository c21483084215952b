use rayon::prelude::*;

use super::epsilon::{index_pairs, pair_slot};
use crate::error::{Result, TopoError};
use crate::lattice::{central2, GridSpec, VectorField};
use crate::liealg::StructureConstants;

/// `A^a_μ` on a grid. Abelian potentials have a single Lie component.
///
/// An exact exterior derivative `∂_μA_ν − ∂_νA_μ` may be attached; every
/// operation that differentiates the potential uses it instead of central
/// differences.
#[derive(Debug, Clone)]
pub struct GaugePotential {
    grid: GridSpec,
    lie_dim: usize,
    structure: Option<StructureConstants>,
    /// `a[μ * lie_dim + a]`
    a: Vec<Vec<f64>>,
    /// `da[pair * lie_dim + a]`
    da: Option<Vec<Vec<f64>>>,
}

impl GaugePotential {
    pub fn abelian(grid: GridSpec, components: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(grid, 1, None, components)
    }

    /// `components[μ * dim(algebra) + a]`.
    pub fn non_abelian(
        grid: GridSpec,
        structure: StructureConstants,
        components: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let d = structure.dim();
        Self::build(grid, d, Some(structure), components)
    }

    /// Multi-component data without structure constants; rejected by any
    /// operation that needs the commutator term.
    pub fn untyped(grid: GridSpec, lie_dim: usize, components: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(grid, lie_dim, None, components)
    }

    fn build(
        grid: GridSpec,
        lie_dim: usize,
        structure: Option<StructureConstants>,
        a: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let expected = grid.dim() * lie_dim;
        if a.len() != expected {
            return Err(TopoError::ComponentMismatch { expected, found: a.len() });
        }
        if let Some(c) = a.iter().find(|c| c.len() != grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: c.len() });
        }
        Ok(Self { grid, lie_dim, structure, a, da: None })
    }

    pub fn from_vector_field(v: &VectorField) -> Self {
        Self::abelian(v.grid().clone(), v.components().to_vec()).expect("dim components")
    }

    /// Attaches an exact exterior derivative, `da[pair * lie_dim + a]`.
    pub fn with_exterior_derivative(mut self, da: Vec<Vec<f64>>) -> Result<Self> {
        let expected = index_pairs(self.grid.dim()).len() * self.lie_dim;
        if da.len() != expected {
            return Err(TopoError::ComponentMismatch { expected, found: da.len() });
        }
        if let Some(c) = da.iter().find(|c| c.len() != self.grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: self.grid.len(), found: c.len() });
        }
        self.da = Some(da);
        Ok(self)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    pub fn structure(&self) -> Option<&StructureConstants> {
        self.structure.as_ref()
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.da.is_some()
    }

    pub fn component(&self, mu: usize, a: usize) -> &[f64] {
        &self.a[mu * self.lie_dim + a]
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.a
    }

    /// Abelian potential as a vector field.
    pub fn to_vector_field(&self) -> Result<VectorField> {
        if self.lie_dim != 1 {
            return Err(TopoError::ComponentMismatch { expected: 1, found: self.lie_dim });
        }
        VectorField::new(self.grid.clone(), self.a.clone())
    }

    /// Structure constants required by the commutator terms; `None` for
    /// Abelian data.
    pub(crate) fn nonabelian_structure(&self) -> Result<Option<&StructureConstants>> {
        match (&self.structure, self.lie_dim) {
            (Some(f), _) if !f.is_abelian() => Ok(Some(f)),
            (_, 1) | (Some(_), _) => Ok(None),
            (None, _) => Err(TopoError::MissingAlgebra),
        }
    }

    /// `∂_μA^a_ν − ∂_νA^a_μ` per pair, exact if attached.
    pub fn exterior_derivative(&self) -> Result<Vec<Vec<f64>>> {
        if let Some(da) = &self.da {
            return Ok(da.clone());
        }
        let dim = self.grid.dim();
        let mut out = Vec::with_capacity(index_pairs(dim).len() * self.lie_dim);
        for (mu, nu) in index_pairs(dim) {
            for a in 0..self.lie_dim {
                let d_mu_a_nu = central2(self.component(nu, a), &self.grid, mu)?;
                let d_nu_a_mu = central2(self.component(mu, a), &self.grid, nu)?;
                out.push(d_mu_a_nu.iter().zip(&d_nu_a_mu).map(|(x, y)| x - y).collect());
            }
        }
        Ok(out)
    }
}

/// `F^a_{μν}` stored for `μ < ν`.
#[derive(Debug, Clone)]
pub struct FieldStrength {
    grid: GridSpec,
    lie_dim: usize,
    f: Vec<Vec<f64>>,
}

impl FieldStrength {
    /// `f[pair * lie_dim + a]` with pairs in `index_pairs` order.
    pub fn new(grid: GridSpec, lie_dim: usize, f: Vec<Vec<f64>>) -> Result<Self> {
        let expected = index_pairs(grid.dim()).len() * lie_dim;
        if f.len() != expected {
            return Err(TopoError::ComponentMismatch { expected, found: f.len() });
        }
        if let Some(c) = f.iter().find(|c| c.len() != grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: c.len() });
        }
        Ok(Self { grid, lie_dim, f })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    /// `F^a_{μν}` at a site, antisymmetric in `μ, ν`.
    #[inline]
    pub fn get(&self, mu: usize, nu: usize, a: usize, site: usize) -> f64 {
        match pair_slot(self.grid.dim(), mu, nu) {
            Some((slot, sign)) => sign * self.f[slot * self.lie_dim + a][site],
            None => 0.0,
        }
    }

    pub fn pair_component(&self, pair: usize, a: usize) -> &[f64] {
        &self.f[pair * self.lie_dim + a]
    }
}

/// `F^a_{μν} = ∂_μA^a_ν − ∂_νA^a_μ + f^{abc} A^b_μ A^c_ν`.
pub fn field_strength(pot: &GaugePotential) -> Result<FieldStrength> {
    let structure = pot.nonabelian_structure()?;
    let mut f = pot.exterior_derivative()?;
    if let Some(fc) = structure {
        let d = pot.lie_dim;
        for (p, (mu, nu)) in index_pairs(pot.grid.dim()).into_iter().enumerate() {
            let quad: Vec<Vec<f64>> = (0..d)
                .map(|a| {
                    (0..pot.grid.len())
                        .into_par_iter()
                        .map(|s| {
                            let mut acc = 0.0;
                            for b in 0..d {
                                let amu = pot.component(mu, b)[s];
                                if amu == 0.0 {
                                    continue;
                                }
                                for c in 0..d {
                                    acc += fc.get(a, b, c) * amu * pot.component(nu, c)[s];
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            for (a, q) in quad.into_iter().enumerate() {
                f[p * d + a].iter_mut().zip(q).for_each(|(x, y)| *x += y);
            }
        }
    }
    FieldStrength::new(pot.grid.clone(), pot.lie_dim, f)
}
