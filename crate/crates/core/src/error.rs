use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("norm of a nonzero element vanished")]
    DegenerateNorm,
    #[error("a denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("invalid branch point: {0}")]
    InvalidBranchPoint(String),
    #[error("generator images do not define a homomorphism: {0}")]
    NotAHom(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("no permutation of {{0, 1, ∞}} matches the Möbius map {0}")]
    NoMatch(String),
    #[error("action table is not closed under composition: {0}")]
    TableNotClosed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("pullback of a coordinate is not a Möbius function: {0}")]
    NonMobiusPullback(String),
    #[error("derivative order {0} exceeds the supported maximum")]
    OrderTooHigh(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("quadrature did not converge (last estimate change {0:e})")]
    NoConvergence(f64),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankError {
    #[error("Θ-derived canonical image differs from the stored one for ξ_{0}")]
    DerivationMismatch(String),
    #[error("row {row} bullet {bullet}: no μ₄ factor matches the reference entry")]
    Table2Mismatch { row: usize, bullet: String },
    #[error("component does not factor over the catalog: {0}")]
    FactorizationFailure(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
