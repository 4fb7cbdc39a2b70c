use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime below 256")]
    InvalidPrime(u32),
    #[error("tree depth must be at least 1")]
    InvalidDepth,
    #[error("tree of depth {depth} over {p} letters is too large for a portrait")]
    ShapeTooLarge { p: u8, depth: u8 },
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },
    #[error("label {label} out of range for p = {p}")]
    InvalidLabel { label: u32, p: u8 },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("vertex has length {len} but the tree has depth {depth}")]
    VertexTooLong { len: usize, depth: u8 },
    #[error("letter {letter} out of range 1..={p}")]
    InvalidLetter { letter: u8, p: u8 },
    #[error("cannot decompose a portrait of depth 1 into sections")]
    DepthOneDecomposition,
    #[error("sections are inconsistent: {0}")]
    InconsistentSections(String),
    #[error("level {k} out of range 0..={depth}")]
    LevelOutOfRange { k: usize, depth: u8 },
    #[error("zero defining vector")]
    ZeroVector,
    #[error("defining vector over p = {p} needs {expected} entries, got {got}")]
    VectorLength { p: u8, expected: usize, got: usize },
    #[error("prime mismatch: vector is over {vector}, tree is over {tree}")]
    PrimeMismatch { vector: u8, tree: u8 },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("budget exceeded: more than {budget} elements (reached {reached})")]
    BudgetExceeded { budget: usize, reached: u128 },
    #[error("element {0} is not in the enumerated group")]
    NotInGroup(String),
    #[error("pair does not generate the group: {0}")]
    NonGenerating(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed encoding: {0}")]
    Encoding(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
