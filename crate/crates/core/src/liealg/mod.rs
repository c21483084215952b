//! Compact matrix Lie algebras: structure constants by trace projection and
//! the symmetric-pair test for a split `g = h ⊕ s`.

mod algebra;
mod pair;

pub use algebra::{
    commutator, frobenius_inner, structure_constants, AlgebraFile, CMatrix, LieAlgebraSpec,
    StructureConstants, DEFAULT_TOL,
};
pub use pair::{check_symmetric_pair, PairCheck, PairReport, SymmetricPairSpec};
