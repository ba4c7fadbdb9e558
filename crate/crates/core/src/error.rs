use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed size header")]
    MalformedHeader,
    #[error("byte {byte} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { byte: u8, offset: usize },
    #[error("expected {expected} adjacency bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("graph on {0} vertices exceeds the graph6 size limit")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("entry {entry} appears more than once")]
    RepeatedEntry { entry: usize },
    #[error("entry {entry} outside 1..={degree}")]
    EntryOutOfRange { entry: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("group closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("exponent must satisfy n >= 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("exponent {0} exceeds the supported maximum {max}", max = crate::construct::MAX_EXPONENT)]
    ExponentTooLarge(u32),
    #[error("bad variant descriptor: {0}")]
    BadVariant(String),
    #[error("fixture unavailable: {0}")]
    Fixture(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("graph has {n} vertices, above the configured limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
