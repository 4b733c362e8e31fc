use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid factoradic code: digit {digit} at position {position} exceeds {position}")]
    InvalidCode { position: usize, digit: usize },

    #[error("width must be at least 1")]
    EmptyWidth,

    #[error("width {width} is too large (maximum {max})")]
    WidthTooLarge { width: usize, max: usize },

    #[error("invalid permutation: value {value} appears more than once")]
    DuplicateEntry { value: usize },

    #[error("invalid permutation: value {value} is outside 1..={width}")]
    EntryOutOfRange { value: usize, width: usize },

    #[error("seed {seed} does not fit width {width} (needs seed <= {width}! - 1)")]
    SeedOutOfRange { seed: String, width: usize },

    #[error("width {width} overflows the native seed type; use an arbitrary-precision seed")]
    SeedOverflow { width: usize },

    #[error("permutations have different widths ({left} and {right})")]
    IncompatibleWidths { left: usize, right: usize },

    #[error("exhaustive oracle limited to n <= {limit}, got n = {width}")]
    OracleSizeExceeded { width: usize, limit: usize },

    #[error("permutations differ in {differing} positions, not 0 or 2")]
    NotAdjacent { differing: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
