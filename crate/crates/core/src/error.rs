use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("b1 must be strictly below b2 (got b1={b1}, b2={b2})")]
    OrderingViolation { b1: f64, b2: f64 },
    #[error("parameter out of range: {0}")]
    RangeViolation(String),
    #[error("no randomness recorded for site {site}, class {class}")]
    RandomnessGap { site: i64, class: usize },
    #[error("both seam values carry zero weight")]
    DegenerateRow,
    #[error("no separating integer in [{lo}, {hi}]")]
    NoneFound { lo: i64, hi: i64 },
    #[error("ordering violated at index {index}")]
    OrderViolation { index: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("thresholds must be strictly increasing and bounded by the class count")]
    BadThresholds,
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("window too large for slab: {0}")]
    WindowTooLarge(String),
    #[error("histogram inputs have mixed window shapes")]
    MixedShapes,
    #[error("left and right states coincide")]
    EqualStates,
    #[error("grid spacing {dx} exceeds the maximum {max}")]
    ResolutionTooCoarse { dx: f64, max: f64 },
    #[error("profiles live on different domains")]
    DomainMismatch,
    #[error("interval [{a}, {b}] is empty after shrinking")]
    EmptyInterval { a: f64, b: f64 },
    #[error("configuration or profile has unbounded support")]
    UnboundedSupport,
    #[error("system has infinitely many particles")]
    InfiniteSystem,
    #[error("histograms have different supports")]
    SupportMismatch,
    #[error("invalid experiment config: {0}")]
    ConfigInvalid(String),
    #[error("{experiment}: {source}")]
    Experiment { experiment: String, source: Box<Error> },
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
