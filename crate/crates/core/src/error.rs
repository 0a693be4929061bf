use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("target fraction {0} is outside the admissible range")]
    LambdaOutOfRange(f64),
    #[error("iteration count must be positive")]
    ZeroIterations,
    #[error("{l} iterations is below the minimum l_min = {l_min} for lambda = {lambda}")]
    TooFewIterations { l: u32, l_min: u32, lambda: f64 },
    #[error("delta = {0} is outside (0, 1]")]
    DeltaOutOfRange(f64),
    #[error("delta is not representable for l = {l}, lambda = {lambda}")]
    DeltaUnderflow { l: u32, lambda: f64 },
    #[error("single-phase arccos argument {0} is outside [-1, 1]")]
    SinglePhaseOutOfDomain(f64),
    #[error("distribution lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("distribution is not normalized (sum = {0})")]
    NotNormalized(f64),
    #[error("invalid probability entry {0}")]
    InvalidProbability(f64),
    #[error("a search instance needs at least one target")]
    NoTargets,
    #[error("target index {index} is out of range for {qubits} qubits")]
    TargetOutOfRange { index: usize, qubits: u32 },
    #[error("duplicate target index {0}")]
    DuplicateTarget(usize),
    #[error("state length {0} is not a power of two")]
    BadStateLength(usize),
    #[error("state dimension {state} does not match the expected {expected}")]
    DimensionMismatch { state: usize, expected: usize },
    #[error("basis index {index} is out of range for {qubits} qubits")]
    BasisIndexOutOfRange { index: usize, qubits: u32 },
    #[error("invalid gate: {0}")]
    InvalidGate(&'static str),
    #[error("{qubits} qubits exceeds the simulation limit of {max}")]
    TooManyQubits { qubits: u32, max: u32 },
    #[error("{qubits} query qubits exceeds the oracle synthesis limit of {max}")]
    SynthesisLimit { qubits: u32, max: u32 },
}

impl Error {
    /// True for errors caused by a configured size limit rather than bad input.
    pub fn is_capability_bound(&self) -> bool {
        matches!(
            self,
            Error::TooManyQubits { .. } | Error::SynthesisLimit { .. } | Error::DeltaUnderflow { .. }
        )
    }
}
