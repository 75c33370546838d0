use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the exit code the command-line front end maps
/// them to; see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroInput,
    #[error("element is not a root of unity")]
    NotRootOfUnity,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("relation {index} is not homogeneous for the generator weights")]
    Inhomogeneous { index: usize },
    #[error("inconsistent presentation: completion derives 1 = 0")]
    InconsistentPresentation,
    #[error("rewrite system exceeded the budget of {cap} rules")]
    BudgetExceeded { cap: usize },
    #[error("search space of {size} candidates exceeds the limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
    #[error("degree {degree} is outside the certified range (complete to {bound})")]
    DegreeOutOfRange { degree: u32, bound: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not normal: {0}")]
    NotNormal(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism has not been verified")]
    UnverifiedAutomorphism,
    #[error("automorphism does not preserve generator weights")]
    NonGradedTwist,
    #[error("not a skew polynomial presentation: {0}")]
    NotSkew(String),
    #[error("algebra is not generated in degree one")]
    NotDegreeOneGenerated,
    #[error("generators do not commute: {0}")]
    NonCommutingGenerators(String),
    #[error("group is not abelian")]
    NonAbelianGroup,
    #[error("no Hilbert series available: {0}")]
    SeriesUnavailable(String),
    #[error("Hilbert series ratio has a pole or zero at t = 1")]
    PoleAtOne,
    #[error("rank at t = 1 is not a positive integer: {0}")]
    NonIntegerRank(String),
    #[error("Molien average {average} disagrees with fixed dimension {dim} in degree {degree}")]
    MolienMismatch { degree: u32, dim: usize, average: String },
    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error("group order {order} does not divide the rank {rank}")]
    ContradictsDivisibility { order: usize, rank: u64 },
    #[error("parameters are degenerate: {0}")]
    DegenerateParameters(String),
    #[error("parameter matrix is not multiplicatively antisymmetric")]
    NotAntisymmetric,
    #[error("root of unity has a disallowed order: {0}")]
    BadOrder(String),
}

impl Error {
    /// Process exit code: 2 parse, 3 inconsistent presentation, 4 budget,
    /// 5 degree out of range, 6 internal cross-check failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::Invalid(_)
            | Error::Inhomogeneous { .. }
            | Error::DegenerateParameters(_)
            | Error::NotAntisymmetric
            | Error::BadOrder(_) => 2,
            Error::InconsistentPresentation => 3,
            Error::BudgetExceeded { .. } | Error::SearchSpaceTooLarge { .. } => 4,
            Error::DegreeOutOfRange { .. } => 5,
            Error::MolienMismatch { .. }
            | Error::CrossCheckFailure(_)
            | Error::ContradictsDivisibility { .. } => 6,
            _ => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
