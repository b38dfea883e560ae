/// Errors raised by the arithmetic kernel and the invariant pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("subspace basis has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("no construction for n={n}, d={d}")]
    UnsupportedCase { n: usize, d: usize },
    #[error("degenerate configuration: {stage} failed at block {block}")]
    Degenerate { stage: &'static str, block: usize },
    #[error("kernel has dimension {found}, expected {expected}")]
    WrongKernelDimension { expected: usize, found: usize },
    #[error("zero pattern violated: {block}-column, block row {row}")]
    ZeroPatternViolation { block: &'static str, row: usize },
    #[error("no general-position sample after {0} attempts")]
    SamplingExhausted(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    /// Maps a bare `Singular` onto a `Degenerate` error naming the stage.
    pub(crate) fn at(self, stage: &'static str, block: usize) -> Error {
        match self {
            Error::Singular => Error::Degenerate { stage, block },
            other => other,
        }
    }
}
