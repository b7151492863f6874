//! Error type shared by all modules.

/// Everything that can go wrong when driving the solver.
///
/// Errors fall into three groups, reflected by [`Error::exit_code`]:
/// invalid input (1), capacity refusals (2), and internal invariant
/// violations that indicate a bug (3).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid shape: {reason}")]
    InvalidShape { reason: String },

    #[error("digit {digit} at position {position} is not a color index in 0..{colors}")]
    DigitOutOfRange {
        /// 1-based player position, as used in all reports.
        position: usize,
        digit: u64,
        colors: usize,
    },

    #[error("configuration code {code} is outside 0..{limit}")]
    CodeOutOfRange { code: u64, limit: u64 },

    #[error("player {player} is outside 1..={players}")]
    PlayerOutOfRange { player: usize, players: usize },

    #[error("adequacy is defined for nonempty candidate sets only")]
    EmptyCandidate,

    #[error("invalid code set: {reason}")]
    InvalidCodeSet { reason: String },

    #[error("probability vector has {got} entries, expected {expected}")]
    ProbabilityCount { expected: usize, got: usize },

    #[error("probability for color {index} is negative")]
    NegativeProbability { index: usize },

    #[error("probabilities sum to {sum}, not 1")]
    UnnormalizedProbabilities { sum: String },

    #[error("set size {das} is outside 1..={max}")]
    DasOutOfRange { das: usize, max: usize },

    #[error("patterns have different coefficient totals ({left} vs {right})")]
    PatternTotalsDiffer { left: u64, right: u64 },

    #[error("patterns belong to different game shapes")]
    PatternShapeMismatch,

    #[error("winning-probability formula index {index} is not one of 1, 2, 3")]
    PsiIndex { index: usize },

    #[error("probabilities violate the sorted-simplex domain: {inequality}")]
    PsiDomain { inequality: String },

    #[error("p = {p} is outside the sorted-simplex range [1/3, 1]")]
    BoundaryDomain { p: f64 },

    #[error("the code set is not adequate; no decision matrix exists for it")]
    NotAdequate,

    #[error("simulation needs at least one trial")]
    ZeroTrials,

    #[error("dominance analysis is incomplete; unresolved pattern(s): {patterns}")]
    DominanceUnresolved { patterns: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
