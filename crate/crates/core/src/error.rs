//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-exact polynomial division")]
    NonExactDivision,
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishesIdentically,
    #[error("polynomial has degree zero in the requested symbol")]
    DegreeZero,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("incompatible expansion points or local variables")]
    IncompatibleExpansionPoints,
    #[error("zero leading coefficient: no known nonzero term to invert")]
    ZeroLeadingCoefficient,
    #[error("requested order {requested} exceeds known truncation {available}")]
    InsufficientOrder { requested: i64, available: i64 },
    #[error("divergent limit: coefficient {coeff} at exponent {exponent}")]
    DivergentLimit { exponent: i64, coeff: String },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { name: String, pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } => *pos,
            ParseError::UnknownSymbol { pos, .. } => *pos,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown model: {0}")]
    UnknownModel(String),
    #[error("L12 entry is identically zero; no scalar reduction")]
    L12IdenticallyZero,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TestError {
    #[error("empty exponent search range")]
    EmptyRange,
    #[error("inconsistent resonance at order {order}: obstruction {obstruction}")]
    InconsistentResonance { order: i64, obstruction: String },
    #[error("expected ansatz not found among leading balances")]
    AnsatzNotFound,
    #[error("ran out of parameter names at order {order}")]
    OutOfParameterNames { order: i64 },
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("divergent limit: coefficient {coeff} at exponent {exponent}")]
    DivergentLimit { exponent: i64, coeff: String },
    #[error("flow inconsistent at order {order}: relation {relation}")]
    Inconsistent { order: i64, relation: String },
    #[error("flow system is not triangular-solvable: {0}")]
    NotTriangular(String),
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error("defining polynomial is not squarefree")]
    SquarefreeFailure,
    #[error("sample lies on the discriminant locus")]
    SampleOnDiscriminant,
    #[error("sample violates a nonvanishing assumption: {0}")]
    SampleOnAssumption(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum NumericError {
    #[error("denominator within 1e-12 of zero at evaluation point")]
    NearPole,
    #[error("step size collapsed at t = {0}")]
    StepCollapse(f64),
    #[error("initial state violates a domain assumption: {0}")]
    DomainViolation(String),
    #[error("not enough samples in the fitting window")]
    InsufficientWindow,
}
