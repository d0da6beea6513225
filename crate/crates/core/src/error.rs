use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("amplitude vector of length {len} does not match {n} qubits")]
    LengthMismatch { n: usize, len: usize },
    #[error("density matrix invalid: {0}")]
    InvalidDensityMatrix(String),
    #[error("qubit label {label} out of range for a {n}-qubit register")]
    QubitOutOfRange { label: usize, n: usize },
    #[error("qubit label {0} appears twice")]
    DuplicateQubit(usize),
    #[error("gate expects {expected} qubit labels, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown state name `{0}`")]
    UnknownState(String),
    #[error("outcome {outcome} has probability {probability:e}, below the selectable threshold")]
    ZeroProbabilityBranch { outcome: u8, probability: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("Schmidt rank {k} outside 1..={max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("invalid Pauli word `{0}`")]
    InvalidPauli(String),
    #[error("value {0} outside [0, 1]")]
    OutOfUnitRange(f64),
    #[error("no Pauli correction reaches the target for outcome branch {0}")]
    NoCorrection(String),
    #[error("pattern invalid: {0}")]
    InvalidPattern(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid noise spec `{0}`")]
    InvalidNoise(String),
    #[error("Pauli word {word} is not measurable in setting {setting}")]
    IncompatibleSetting { word: String, setting: String },
    #[error("no count record covers term {0}")]
    MissingSetting(String),
    #[error("counts parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("record for setting {0} has no events")]
    NoEvents(String),
    #[error("standard error must be positive, got {0}")]
    NonPositiveError(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
