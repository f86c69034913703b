use thiserror::Error;

use crate::dsl::ExprError;
use crate::form::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no causal class")]
    ZeroVector,
    #[error("null vector: its orthogonal complement contains the vector itself")]
    NullVector,
    #[error("degenerate bilinear form (|det| = {det:e})")]
    DegenerateForm { det: f64 },
    #[error("vector is not timelike")]
    NotTimelike,
    #[error("wrong signature: expected (1,0,3), found {found}")]
    WrongSignature { found: Signature },
    #[error("not Riemannian: expected (0,0,4), found {found}")]
    NotRiemannian { found: Signature },
    #[error("expected exactly one negative generalized eigenvalue, found {count}")]
    EigencountViolation { count: usize },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("non-finite value encountered")]
    NonFinite,
    #[error("form is not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },

    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{context}: {source}")]
    InExpr {
        context: String,
        #[source]
        source: ExprError,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("spec parse error: {0}")]
    SpecParse(String),
    #[error("unknown coordinate or parameter `{name}` in {context}")]
    UnknownCoordinate { name: String, context: String },
    #[error("asymmetric metric: {key} = \"{a}\" but its transpose is \"{b}\"")]
    AsymmetricMetric { key: String, a: String, b: String },
    #[error("missing diagonal metric component {0}")]
    MissingDiagonal(String),
    #[error("loop `{name}` is not closed: coordinate {coord} differs by {gap:e}")]
    LoopNotClosed {
        name: String,
        coord: String,
        gap: f64,
    },
    #[error("point {point:?} is excluded by predicate `{predicate}`")]
    ExcludedPoint { point: [f64; 4], predicate: String },
    #[error("no sampling box declared for coordinate `{0}`")]
    MissingBox(String),
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("transport needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("line field alignment {alignment:.3e} still below threshold at {samples} samples on `{curve}`")]
    ResolutionExceeded {
        curve: String,
        samples: usize,
        alignment: f64,
    },
}

impl Error {
    pub(crate) fn in_expr(context: impl Into<String>, source: ExprError) -> Self {
        Error::InExpr {
            context: context.into(),
            source,
        }
    }
}
