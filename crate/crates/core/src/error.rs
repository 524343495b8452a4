use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter at position {position} occurs only once")]
    SingleOccurrence { position: usize },
    #[error("letter at position {position} occurs more than twice")]
    TooManyOccurrences { position: usize },
    #[error("invalid character {ch:?} at position {position}")]
    InvalidCharacter { position: usize, ch: char },
    #[error("rank {rank} is too large")]
    RankTooLarge { rank: usize },
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("irreducible word {word} of rank {rank} is missing from the generator table")]
    MissingGenerator { word: String, rank: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum SmithError {
    #[error("modulus 2^{bits} does not fit in a {width}-bit word")]
    ModulusTooWide { bits: u32, width: u32 },
    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    OutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("diagonal residue {residue} is not a power of two")]
    NotPowerOfTwo { residue: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {word}: {message}")]
    Invalid { line: usize, word: String, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Smith(#[from] SmithError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
