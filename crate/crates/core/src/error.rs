use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A scenario parameter violates a model constraint.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A function was evaluated outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical kernel failed to converge.
    #[error("numerical failure in {what}: {detail}")]
    Numerical { what: &'static str, detail: String },

    /// A trajectory cannot be flown within the energy budget.
    #[error("infeasible schedule: {0}")]
    Infeasible(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Csv(_) => 3,
            Error::Json(e) if e.is_io() => 3,
            Error::Numerical { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
