use thiserror::Error;

/// Errors surfaced by construction and analysis routines.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("invalid field characteristic {0} (must be 0 or a prime)")]
    InvalidField(u64),

    #[error("invalid Dynkin datum: {0}")]
    InvalidDynkin(String),

    #[error("invalid quotient spec: {0}")]
    InvalidQuotient(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The layered basis computation did not reach a zero layer within the
    /// allowed path length. Signals a non-finite-dimensional mesh algebra.
    #[error("path-class layer {max_len} is still {dim}-dimensional; mesh algebra is not finite-dimensional within the bound")]
    Truncation { max_len: usize, dim: usize },

    #[error("bilinear form is degenerate; input algebra is not self-injective")]
    DegenerateForm,

    #[error("linear solve failed: {0}")]
    Unsolvable(String),

    #[error("grading rejected: {0}")]
    InhomogeneousGrading(String),

    #[error("nakayama automorphism is not graded: {0}")]
    UngradedNakayama(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
