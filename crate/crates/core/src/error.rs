use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("dense matrix of {rows}x{cols} exceeds the materialization limit")]
    DenseTooLarge { rows: usize, cols: u64 },

    #[error("could not construct a full-rank LDPC parity-check matrix after {0} attempts")]
    LdpcConstruction(usize),

    #[error("component containing node {0} has more than one cycle")]
    ComplexComponent(u64),

    #[error("node {0} is not in the error propagation graph")]
    UnknownNode(u64),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
