use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative probability: {name} = {value}")]
    NegativeProbability { name: &'static str, value: String },
    #[error("mass exceeded: eps0 + eps1 = {sum} > 1")]
    MassExceeded { sum: String },
    #[error("non-finite probability: {name}")]
    NonFinite { name: &'static str },
    #[error("cannot parse probability {0:?}")]
    BadProbability(String),

    #[error("binary row contains '?' at cell {0}")]
    QuestionInBinary(usize),
    #[error("width {width} too small (need at least {min})")]
    WidthTooSmall { width: usize, min: usize },
    #[error("neighbourhood size must be at least 2, got {0}")]
    BadNeighbourhood(usize),
    #[error("bad board dimensions {width}x{height} for n = {n}")]
    BadBoard { width: usize, height: usize, n: usize },
    #[error("invalid cell character {0:?}")]
    BadCell(char),

    #[error("row has no '?' cell; islands are undefined")]
    AllBinaryRow,
    #[error("need {need} boundary cells, got {got}")]
    InsufficientContext { need: usize, got: usize },
    #[error("boundary tuple has arity {got}, expected {expected}")]
    BadArity { got: usize, expected: usize },
    #[error("no samples for condition {0}")]
    EmptySample(String),
    #[error("boundary geometry only defined for n = 2 or 3, got {0}")]
    UnsupportedN(usize),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("certificate gap: term {term} has coefficient {coeff}")]
    CertificateGap { term: String, coeff: String },
    #[error("certificate step {step} invalid: {msg}")]
    BadStep { step: usize, msg: String },
    #[error("invalid chain: {0}")]
    BadChain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
