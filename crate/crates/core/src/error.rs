use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("linear form 0*x + 0*y does not define a hyperplane")]
    ZeroLinearForm,

    #[error("forms {first} and {second} define the same hyperplane")]
    ProportionalForms { first: usize, second: usize },

    #[error("multiplicity has {got} entries but the arrangement has {expected} forms")]
    LengthMismatch { expected: usize, got: usize },

    #[error("derivation {which} is not in D(A, m)")]
    NotMember { which: usize },

    #[error("multiplicity is balanced; the non-balanced construction does not apply")]
    BalancedInput,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("no closed form covers this multiplicity: {0}")]
    CaseNotCovered(String),

    #[error("double factorial undefined for {0}")]
    DomainError(i64),

    #[error("cannot parse {0}")]
    Parse(String),

    #[error("linear substitution is singular")]
    SingularSubstitution,

    #[error("{0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
