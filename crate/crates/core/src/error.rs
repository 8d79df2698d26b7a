use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NbgError {
    #[error("distribution has {got} entries but the game has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("distribution total {got} does not match the game's mass {expected}")]
    TotalMismatch { expected: f64, got: f64 },

    #[error("negative mass {value} on vertex {vertex}")]
    NegativeMass { vertex: usize, value: f64 },

    #[error("total mass must be positive")]
    NonPositiveMass,

    #[error("negative coefficient in {0}")]
    NegativeCoefficient(String),

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-influence ({0}, {0}) must be expressed through the vertex-cost function")]
    SelfLoop(usize),

    #[error("operation needs a graphical game")]
    NotGraphical,

    #[error("operation needs an affine game")]
    NotAffine,

    #[error("operation needs a symmetric graphical game; no potential exists otherwise")]
    NotSymmetric,

    #[error("operation needs an alpha-uniform game")]
    NotAlphaUniform,

    #[error("{n} vertices exceeds the limit of {max} for this operation")]
    TooLarge { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no equilibrium found")]
    NoEquilibrium,
}
