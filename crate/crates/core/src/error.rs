use thiserror::Error;

/// Errors raised by the tiltwalk library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus ell = {ell} is too small (need ell >= {min})")]
    ModulusTooSmall { ell: u64, min: u64 },

    #[error("row index {n} out of range for a table truncated at {max}")]
    RowOutOfRange { n: usize, max: usize },

    #[error("residue {r} out of range for modulus {ell}")]
    ResidueOutOfRange { r: u64, ell: u64 },

    #[error("index {j} out of range {lo}..={hi}")]
    IndexOutOfRange { j: u64, lo: u64, hi: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("series constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: String, found: String },

    #[error("series truncations differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),

    #[error("multiset is not the Delta-multiset of a tilting module: weight {weight} would go negative")]
    NotTilting { weight: u64 },

    #[error("quadrature did not reach tolerance 1e-{digits} after {evaluations} panels")]
    QuadratureDiverged { digits: u32, evaluations: usize },

    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: usize, hi: usize },

    #[error("invalid root system {0}")]
    InvalidRootSystem(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
