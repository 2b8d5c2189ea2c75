use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("index undefined: rho must exceed 1")]
    IndexUndefined,
    #[error("invalid surface: {}", .0.join("; "))]
    InvalidSurface(Vec<String>),
    #[error("stratum {stratum} is not admissible on {surface}")]
    InadmissibleStratum { surface: String, stratum: String },
    #[error("not nef")]
    NotNef,
    #[error("lemma requires {0}")]
    LemmaPrecondition(&'static str),
    #[error("fibre has no strict transform rule here")]
    FibreTransform,
    #[error("multiplicity exceeds fibre degree")]
    MultiplicityExceedsDegree,
    #[error("lambda {0} out of range: the map needs lambda > 1")]
    LambdaOutOfRange(String),
    #[error("empty interval")]
    EmptyInterval,
    #[error("influence area unknown for {0}")]
    UnknownInfluence(String),
    #[error("truncation too shallow at depth {0}")]
    TruncationTooShallow(u64),
    #[error("coverage unknown for {0}")]
    CoverageUnknown(String),
    #[error("no feasibility constraint family enabled")]
    NoConstraints,
    #[error("{0}")]
    Parse(String),
}
