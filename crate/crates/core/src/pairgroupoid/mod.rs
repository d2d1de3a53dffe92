//! The pair groupoid `M×M ⇉ M`: structure maps, tangent and cotangent
//! groupoids, invariant extension/restriction of algebroid data, and
//! multiplicativity checks.
//!
//! Source and target are `s(x, y) = y`, `t(x, y) = x`. The algebroid is `TM`
//! with the identity anchor; right-invariant fields are `s`-vertical and
//! constant along right translations, i.e. of the form `(X(x), 0)`. Left
//! constructions are the inversion images of the right ones.
//!
//! For `N = →n` the base component `N_M` is taken to be `n` itself.

mod groupoid;
mod invariant;
mod multiplicative;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::symexpr::Poly;

pub use groupoid::{
    axiom_symbols, base_triple, check_all_axioms, check_axioms, check_morphism, cotangent_triple,
    first_difference, tangent_triple, BaseGroupoid, ComposableTriple, Components, CotangentElement,
    CotangentGroupoid, Covector, FormalSymbols, Groupoid, PairArrow, Point, TangentElement,
    TangentGroupoid, TangentVector,
};
pub use invariant::PairGroupoid;
pub use multiplicative::{check_bivector_multiplicative, check_endo_multiplicative, first_failure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    /// `s(g) ≠ t(h)`; `residual` is the first nonzero difference.
    #[error("arrows are not composable: {label} differs by {residual}")]
    NonComposable { label: String, residual: Poly },
    /// The bivector has a component outside `∧²A` at the units.
    #[error("not s-vertical at units: {label} = {residual}")]
    NotSVertical { label: String, residual: Poly },
    #[error("tensor is not on the expected chart of the pair groupoid")]
    WrongChart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Right,
    Left,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Right => "right",
            Convention::Left => "left",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(Convention::Right),
            "left" => Ok(Convention::Left),
            other => Err(format!("unknown convention '{other}' (expected right|left)")),
        }
    }
}

/// All five structure maps of a groupoid on a sample: `s(g)`, `t(g)`,
/// `u(s(g))`, `g⁻¹`, and `g·h` when defined.
pub struct StructureMaps<G: Groupoid> {
    pub source: G::Object,
    pub target: G::Object,
    pub unit: G::Arrow,
    pub inverse: G::Arrow,
    pub product: Result<G::Arrow, GroupoidError>,
}

pub fn structure_maps<G: Groupoid>(grp: &G, g: &G::Arrow, h: &G::Arrow) -> StructureMaps<G> {
    let source = grp.source(g);
    StructureMaps {
        target: grp.target(g),
        unit: grp.unit(&source),
        inverse: grp.inverse(g),
        product: grp.compose(g, h),
        source,
    }
}
