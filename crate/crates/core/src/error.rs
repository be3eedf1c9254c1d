//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while parsing an algebra document or
/// computing with the resulting algebra.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("unknown vertex `{vertex}` referenced by arrow `{arrow}`")]
    UnknownVertex { arrow: String, vertex: String },

    #[error("unknown arrow `{0}` referenced by a relation")]
    UnknownArrow(String),

    #[error("duplicate id `{0}`")]
    DuplicateId(String),

    #[error("relation ({first}, {second}) is not composable: head({first}) != tail({second})")]
    NonComposableRelation { first: String, second: String },

    #[error("duplicate relation ({first}, {second})")]
    DuplicateRelation { first: String, second: String },

    #[error("operation requires an acyclic quiver")]
    CyclicQuiver,

    #[error("algebra is not gentle: {0}")]
    NotGentle(String),

    #[error("no exact coloring: extending arrow `{arrow}` forces the non-relation pair ({first}, {second}) monochromatic")]
    NoExactColoring {
        arrow: String,
        first: String,
        second: String,
    },

    #[error("algebra is not a string algebra: {0}")]
    NotString(String),

    #[error("coloring search exhausted; no gentle cover found (unexpected for a string algebra)")]
    SearchExhausted,

    #[error("unsupported algebra class: {0}")]
    UnsupportedClass(String),

    #[error("field F_{prime} too small: {context}")]
    FieldTooSmall { prime: u64, context: String },

    #[error("inconsistent Monte Carlo trials: {0} (raise the trial count or the field size)")]
    Inconsistent(String),

    #[error("failed to split a decomposable module after bounded retries: {0}")]
    SplitFailure(String),

    #[error("exact oracle scale exceeded: {0}")]
    OracleScaleExceeded(String),

    #[error("module is not in canonical string/band form: {0}")]
    NotCanonicalForm(String),

    #[error("not semistable: {0}")]
    NotSemistable(String),

    #[error("not stable: {0}")]
    NotStable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
