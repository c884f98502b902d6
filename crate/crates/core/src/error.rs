//! Error types shared by the state, measurement, observer and decomposition
//! modules. Scenario parsing and execution have their own error type in
//! [`crate::scenario`].

use thiserror::Error;

/// Errors raised by constructors and operations on states, measurements,
/// observers and ensembles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude vector is zero")]
    ZeroVector,

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("norm {norm} is too far from 1 to renormalize (leniency {leniency})")]
    NormOutOfRange { norm: f64, leniency: f64 },

    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("trace {trace} is too far from 1 to renormalize (leniency {leniency})")]
    TraceOutOfRange { trace: f64, leniency: f64 },

    #[error("weights must be non-negative, got {weight}")]
    NegativeWeight { weight: f64 },

    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("mixture has no components")]
    EmptyMixture,

    #[error("effect spectrum outside [0, 1] (eigenvalue {eigenvalue})")]
    EffectSpectrum { eigenvalue: f64 },

    #[error("effects do not sum to the identity (max deviation {deviation:.3e})")]
    Incomplete { deviation: f64 },

    #[error("measurement has no effects")]
    EmptyMeasurement,

    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },

    #[error("effect {label:?} is not a projector (deviation {deviation:.3e})")]
    NotProjective { label: String, deviation: f64 },

    #[error("effects {a:?} and {b:?} are not orthogonal (deviation {deviation:.3e})")]
    NotOrthogonal { a: String, b: String, deviation: f64 },

    #[error("trace has imaginary part {imaginary:.3e}, inputs are invalid")]
    ImaginaryProbability { imaginary: f64 },

    #[error("outcome {label:?} has probability {probability:.3e}, conditioning on it is impossible")]
    ZeroProbability { label: String, probability: f64 },

    #[error("unknown outcome label {label:?}")]
    UnknownLabel { label: String },

    #[error("observation {label:?} is impossible under every hypothesis (evidence {evidence:.3e})")]
    ZeroEvidence { label: String, evidence: f64 },

    #[error("duplicate hypothesis id {id:?}")]
    DuplicateHypothesis { id: String },

    #[error("observer has no hypotheses")]
    EmptyEnsemble,

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("unitary dimension {unitary} does not match component count {components}")]
    ComponentCountMismatch { unitary: usize, components: usize },

    #[error("ambiguous component pairing: components {a} and {b} both match within tolerance but are not interchangeable")]
    AmbiguousPairing { a: usize, b: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
