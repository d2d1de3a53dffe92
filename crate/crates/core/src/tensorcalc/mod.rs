//! Tensor fields with polynomial components on one chart, and the brackets,
//! torsion and compatibility conditions of Poisson–Nijenhuis geometry.

mod fields;
mod ops;
mod pn;

use thiserror::Error;

use crate::symexpr::{Poly, SymError};

pub use fields::{Bivector, EndoField, OneForm, Trivector, VectorField, VectorTwoForm};
pub use ops::{
    d_function, deformed_bracket, directional, endo_compose_bivector, endo_dual, form_bracket,
    jacobiator, lie_bracket, lie_derivative_oneform, magri_morosi, nijenhuis_torsion,
    poisson_bracket, schouten_square, sharp, torsion_on,
};
pub use pn::{pn_manifold_check, PN_ITEMS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Sym(#[from] SymError),
    /// `N∘P♯` is not antisymmetric; `witness = (N·P)ⁱʲ + (N·P)ʲⁱ`.
    #[error("N∘P♯ is not antisymmetric: symmetric part at ({i},{j}) is {witness}")]
    NotABivector { i: usize, j: usize, witness: Poly },
    #[error("bivector entries need i < j, got ({i},{j})")]
    NotUpperIndex { i: usize, j: usize },
}
