use thiserror::Error;

use crate::plmap::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed dyadic literal {0:?}")]
pub struct DyadicParseError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid map: {}", summarize(.0))]
    Invalid(Vec<Violation>),
    #[error("NOT_IN_F: map is not eventually integrally affine")]
    NotInF,
    #[error(
        "ORIENTATION_REVERSING: growth rates are only defined for orientation-preserving maps"
    )]
    OrientationReversing,
    #[error("IDENTITY_INPUT: the identity moves no interval")]
    IdentityInput,
    #[error("SUPPORT_TOO_LARGE: support is not contained in [0, 1]")]
    SupportTooLarge,
    #[error("NOT_SUPPORTED_IN: support is not contained in {0}")]
    NotSupportedIn(String),
    #[error("SINGULAR: generators span a subgroup of infinite index")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn summarize(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
