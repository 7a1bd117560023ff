use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a value needs at least one coordinate")]
    EmptyValue,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("not a rational number: {0:?}")]
    BadRational(String),

    #[error("weights must be positive (variable {name} has weight {weight})")]
    NonPositiveWeight { name: String, weight: String },
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("a ring needs at least one variable")]
    EmptyRing,
    #[error("arguments belong to different rings")]
    RingMismatch,
    #[error("initial form of the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not an element of the prime field")]
    NotInField(String),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("rank {0} semigroup search needs an explicit degree cap")]
    CapRequired(usize),
    #[error("operation needs rank-1 values, got rank {0}")]
    RankOneRequired(usize),

    #[error("{0}")]
    Equation(String),
    #[error("tail term {term} has weight {term_weight}, which is not above the head weight {head_weight}")]
    TailWeight {
        term: String,
        term_weight: String,
        head_weight: String,
    },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("{lambdas} lambdas given for {vectors} relation vectors")]
    LambdaCount { lambdas: usize, vectors: usize },
    #[error("inconsistent lambda character: relation {relation:?} gives product {product}")]
    InconsistentCharacter { relation: Vec<i64>, product: String },
    #[error("relation vector {0:?} does not annihilate the weights")]
    NotARelation(Vec<i64>),

    #[error("certification failed: {0}")]
    Certification(String),
    #[error("initial form of {element} is not in the ideal of the heads (remainder {remainder})")]
    InitialIdealMismatch { element: String, remainder: String },
    #[error("system is not certified")]
    Uncertified,
    #[error("precision insufficient: {0}")]
    Precision(String),

    #[error("initial set: {0}")]
    InitialSet(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("branch data violates {0}")]
    Branch(String),

    #[error("specialization: {0}")]
    Specialization(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at {0}")]
    NegativeExponent(usize),

    #[error("{path}: {msg}")]
    Load { path: String, msg: String },
}

impl Error {
    pub(crate) fn at(self, path: impl Into<String>) -> Error {
        match self {
            Error::Load { .. } => self,
            other => Error::Load {
                path: path.into(),
                msg: other.to_string(),
            },
        }
    }
}
