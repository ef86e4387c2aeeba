use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {0} is not supported (need level >= 3)")]
    InvalidLevel(u32),

    #[error("scalars live at level {left} and level {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("boundary mismatch: left side has {left} points, right side has {right}")]
    BoundaryMismatch { left: usize, right: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorIndex { index: usize, strands: usize },

    #[error("{0} is not a valid through-strand label here")]
    InvalidLabel(usize),

    #[error("g is undefined at {t}: {t} = -1 mod {level}")]
    GUndefined { t: usize, level: u32 },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
