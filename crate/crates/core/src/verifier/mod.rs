//! Named suites over the tensor and groupoid layers, a seeded instance
//! corpus, and a floating-point re-evaluation oracle.

mod corpus;
mod oracle;
mod suites;

use std::sync::Arc;

use thiserror::Error;

use crate::pairgroupoid::GroupoidError;
use crate::symexpr::{ensure_same, ChartSpace};
use crate::tensorcalc::{Bivector, EndoField, TensorError};

pub use corpus::{
    correspondence_corpus, perturbed_bivector, random_bivector, random_endo, random_oneform, random_poly,
    random_rational, random_vector, so3_bivector, PolyShape, CORPUS_SIZE,
};
pub use oracle::{
    numeric_oracle, oracle_cases, run_oracle_suite, OracleCase, FD_STEP, ORACLE_FAMILIES, ORACLE_TOLERANCE,
};
pub use suites::{run_algebroid_suite, run_correspondence, run_groupoid_suite, MATCHED_ITEMS};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// `(Λ, n)` on the algebroid `TM` of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidData {
    lambda: Bivector,
    n: EndoField,
}

impl AlgebroidData {
    pub fn new(lambda: Bivector, n: EndoField) -> Result<Self, TensorError> {
        ensure_same(lambda.space(), n.space())?;
        Ok(AlgebroidData { lambda, n })
    }

    pub fn base(&self) -> &Arc<ChartSpace> {
        self.lambda.space()
    }

    pub fn lambda(&self) -> &Bivector {
        &self.lambda
    }

    pub fn n(&self) -> &EndoField {
        &self.n
    }
}
