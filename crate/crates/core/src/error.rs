use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor {conductor} has no primitive root of unity of order {required}")]
    ConductorInsufficient { conductor: u32, required: u32 },

    #[error("conductor already initialized to {current}, cannot switch to {requested}")]
    ConductorLocked { current: u32, requested: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("degenerate bilinear form")]
    DegenerateForm,

    #[error("zero torus coordinate")]
    ZeroCoordinate,

    #[error("not a Lie algebra: {0}")]
    NotLie(String),

    #[error("isometry enumeration anchor violated: {0}")]
    Anchor(String),

    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),

    #[error("family is not abelian: {pairs:?}")]
    NonCommuting { pairs: Vec<(usize, usize)> },

    #[error("no commuting twist with exponents dividing {bound}; obstruction pairs {pairs:?}")]
    NoTwist { bound: u32, pairs: Vec<(usize, usize)> },

    #[error("lifted isometry failed bracket check at basis pair ({0}, {1})")]
    LiftVerification(usize, usize),

    #[error("grading check failed: {0}")]
    Grading(String),

    #[error("composition algebra check failed: {0}")]
    Composition(String),

    #[error("triality solve: {0}")]
    Triality(String),

    #[error("not a similitude of the form")]
    NotSimilitude,

    #[error("square-root witness: {0}")]
    Witness(String),

    #[error("operation needs matrix form")]
    NeedsMatrix,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("invalid quasitorus spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
