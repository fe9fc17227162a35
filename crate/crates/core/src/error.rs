use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("sphere would be truncated by the ball boundary: {0}")]
    TruncatedSphere(String),
    #[error("parabolic subgroup on {0} is infinite")]
    InfiniteParabolic(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("enumeration unstable: degree bounds {bound} and {next} disagree ({at_bound} vs {at_next} elements)")]
    Unstable {
        bound: usize,
        next: usize,
        at_bound: usize,
        at_next: usize,
    },
    #[error("orbit/stabilizer mismatch: {0}")]
    OrbitStabilizer(String),
    #[error("elimination failed to terminate within {0} steps")]
    EliminationDiverged(usize),
    #[error("two independent computations disagree: {0}")]
    CrossCheck(String),
    #[error("realization requires a 1-dimensional complex, got dimension {0}")]
    NotAGraph(usize),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
