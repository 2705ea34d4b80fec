use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at {assignment}")]
    DenominatorVanishes { assignment: String },

    #[error("parameter {name} may not be specialized to zero")]
    ZeroParameter { name: char },

    #[error("presentation `{0}` has no involution")]
    NoInvolution(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrices belong to different presentations (`{0}` vs `{1}`)")]
    PresentationMismatch(String, String),

    #[error("element is not central: fails to commute with generator `{witness}`")]
    NotCentral { witness: String },

    #[error("presentation `{name}` is not confluent: {count} unresolved ambiguities, first at word {witness}")]
    NotConfluent { name: String, count: usize, witness: String },

    #[error("relation cannot be oriented: {0}")]
    BadRelation(String),

    #[error("involution is inconsistent: {0}")]
    InvolutionInconsistent(String),

    #[error("R-matrix does not satisfy the Yang-Baxter equation: {0}")]
    YangBaxter(String),

    #[error("projector check failed: {0}")]
    NotIdempotent(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("parameter domain violation: {0}")]
    Domain(String),

    #[error("unknown name `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
