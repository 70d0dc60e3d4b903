use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal: {0:?}")]
    ParseRational(String),
    #[error("rational with zero denominator: {0:?}")]
    ZeroDenominator(String),
    #[error("generator needs p+1 = {expected} vertices, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("generator endpoints must be zero (v0 = vp = 0)")]
    EndpointNotZero,
    #[error("generator needs at least one nonzero interior vertex")]
    AllInteriorZero,
    #[error("subdivision count p must be at least 2, got {0}")]
    SubdivisionTooSmall(u32),
    #[error("dilation multiplier c must be at least 1")]
    ZeroMultiplier,
    #[error("base {b} is not a positive multiple of p = {p}")]
    BaseNotMultiple { b: u64, p: u32 },
    #[error("piece index {i} out of range for p = {p}")]
    PieceIndex { i: usize, p: u32 },
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("tail bound does not reach the tolerance within {cap} terms")]
    TailCapExceeded { cap: u32 },
    #[error("interval is empty or degenerate")]
    EmptyInterval,
    #[error("interval does not reduce into [0, 1]")]
    IntervalOutOfRange,
    #[error("no lattice interval fits inside the query interval up to level {cap}")]
    LocateCapExceeded { cap: u32 },
    #[error("{0} is not a b-adic lattice point for this spec")]
    NonLatticePoint(String),
    #[error("sample abscissae must be strictly increasing")]
    SamplesUnsorted,
    #[error("sample set must cover [0, 1] with f(0) = f(1) = 0")]
    SampleEndpoints,
    #[error("no samples provided")]
    EmptySamples,
    #[error("target error {eps} unachievable; best bound {best}")]
    EpsUnachievable { eps: String, best: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
