//! Error types shared across the crate.

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("ray origin is not strictly interior to the body")]
    OriginNotInterior,
    #[error("operation requires a bounded body")]
    UnboundedBody,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("f must not be integral")]
    FIntegral,
    #[error("columns must be nonzero")]
    ZeroColumn,
    #[error("f is not strictly interior to the body")]
    FNotInterior,
    #[error("body is not lattice-free")]
    BodyNotLatticeFree,
    #[error("point is not in the cone spanned by the columns")]
    NotInCone,
    #[error("cone of the columns is not all of R^2")]
    ConeNotFull,
    #[error("cone of the columns is already all of R^2")]
    ConeAlreadyFull,
    #[error("probe direction does not complete the cone to R^2")]
    ProbeInsufficient,
    #[error("gamma is zero: the input is dominated by a split inequality")]
    GammaZero,
    #[error("induced body must be bounded")]
    UnboundedInduced,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("body is not lattice-free")]
    NotLatticeFree,
    #[error("f is not strictly interior to the body")]
    FNotInterior,
    #[error("body class does not match the requested standardization")]
    ClassMismatch,
    #[error("no standardizing map satisfies all standard-form clauses")]
    NoStandardizingMapFound,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("a required ray/line intersection is missing or at infinity")]
    IntersectionMissing,
    #[error("no admissible lambda for the wedge construction")]
    NoAdmissibleLambda,
    #[error("input is not a standardized Q2 instance")]
    NotStandardQ2,
    #[error("dimension too large for the exact oracle")]
    DimensionTooLarge,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("induced set is a type-1 triangle: split rank is not finite")]
    NotFiniteRank,
    #[error("goal inequality is not valid for the model")]
    NotValid,
    #[error("induced set matches no supported taxonomy class")]
    UnsupportedClass,
    #[error("disjunction sequence hit the iteration cap ({0})")]
    NonTermination(u64),
    #[error("wedge reduced to neither a split subset nor a T2B triangle")]
    WedgeNotReducible,
    #[error("diamond construction produced an unusable body")]
    DiamondNotReducible,
    #[error("standardized instance violates the expected case analysis")]
    StandardizationMismatch,
    #[error("inequality is not facet-defining for the two-variable model")]
    NotFacet,
    #[error("division by zero in the recursion state")]
    DivisionByZero,
    #[error("goal inequality is trivial")]
    Trivial,
    #[error("a synthesized step failed engine verification: {0}")]
    StepVerificationFailed(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown cut reference: {0}")]
    UnknownCutReference(String),
}
