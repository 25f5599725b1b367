use thiserror::Error;

/// Errors raised while building, lowering, simulating or costing circuits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("wire {wire} is out of range for a circuit of width {width}")]
    WireOutOfRange { wire: usize, width: usize },

    #[error("invalid register layout: {0}")]
    Layout(String),

    #[error("malformed gate: {0}")]
    GateShape(String),

    #[error("cannot compose circuits of width {first} and {second}")]
    Composition { first: usize, second: usize },

    #[error("{controls}-control gate exceeds the limit of {max} controls for width {width}")]
    TooManyControls {
        controls: usize,
        width: usize,
        max: usize,
    },

    #[error("lowering needs {needed} borrowed wires but only {available} are free")]
    NotEnoughBorrows { needed: usize, available: usize },

    #[error("gate has negative controls; conjugate them before ladder lowering")]
    Polarity,

    #[error("invalid circuit size: {0}")]
    Spec(String),

    #[error("state width {state} does not match circuit width {circuit}")]
    WidthMismatch { circuit: usize, state: usize },

    #[error("value {value} does not fit in {bits} bits")]
    Range { value: u128, bits: usize },

    #[error("width {width} exceeds the exhaustive-scan limit of {limit}")]
    TooWide { width: usize, limit: usize },

    #[error("outside formula domain: {0}")]
    Domain(String),

    #[error("gate {index}: {source}")]
    AtGate { index: usize, source: Box<Error> },
}

impl Error {
    /// Strips any gate-index annotation.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtGate { source, .. } => source.root(),
            other => other,
        }
    }

    /// Gate index attached by circuit-level passes, if any.
    pub fn gate_index(&self) -> Option<usize> {
        match self {
            Error::AtGate { index, .. } => Some(*index),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
