use thiserror::Error;

use crate::exactmath::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadratic field mismatch: theta^2 = {left} vs theta^2 = {right}")]
    FieldMismatch { left: Box<Rational>, right: Box<Rational> },
    #[error("theta^2 = {0} is a rational square; Q(theta) would not be a quadratic field")]
    SquareGenerator(Rational),
    #[error("no real order on Q(theta) with theta^2 = {0} < 0")]
    NoRealOrder(Rational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class is not of type (1,1) at this period matrix")]
    NotOneOne,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("classes span a subspace of rank {rank}, need rank 3")]
    RankDeficient { rank: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("unsupported basis shape: {0}")]
    UnsupportedShape(String),
    #[error("locus is not linear: some class has C != 0")]
    NonlinearLocus,
    #[error("base period matrix does not lie on the locus")]
    InfeasibleBase,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gave up after {0} resampling attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
