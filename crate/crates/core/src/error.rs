use thiserror::Error;

/// Errors shared by every algorithm in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input references ids that do not exist, or violates a structural invariant.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// No feasible solution exists. `best` is the largest value that can be achieved
    /// (covered elements for set cover, hit ranges for hitting set).
    #[error("infeasible instance: {reason}")]
    Infeasible { reason: String, best: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Tied coordinates where the construction needs general position.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("secondary net sampling failed after {attempts} attempts (t_M = {weight_factor})")]
    NetSampleFailure { attempts: u32, weight_factor: f64 },

    #[error("reweighting did not converge: {0}")]
    BgDivergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
