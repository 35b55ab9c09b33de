//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by catalog parsing, decoding, evaluation and GA setup.
#[derive(Debug, Error)]
pub enum Error {
    /// Catalog JSON could not be parsed at all.
    #[error("catalog parse error: {0}")]
    CatalogParse(#[from] serde_json::Error),

    /// Catalog parsed but violates a structural rule.
    #[error("catalog validation error: {0}")]
    CatalogValidation(String),

    /// A subdivision count was requested that the component does not offer.
    #[error("component '{component}' has no subdivision option {requested} (available: {available:?})")]
    InvalidSubdivision {
        component: String,
        requested: usize,
        available: Vec<usize>,
    },

    /// A selection vector does not match the configuration space.
    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    /// A chromosome or activation record is structurally broken.
    #[error("invalid chromosome: {0}")]
    InvalidChromosome(String),

    /// Physics routines need at least one massive item.
    #[error("layout has no items; centroid and inertia are undefined")]
    EmptyLayout,

    /// Occupation-rate scaling asked for an unreachable target.
    #[error("invalid occupation rate target {0}; must lie strictly between 0 and 1")]
    InvalidOccupationRate(f64),

    /// GA configuration failed validation.
    #[error("invalid GA configuration: {0}")]
    InvalidGaConfig(String),
}
