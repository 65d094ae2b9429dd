use polystrata::{Error, PoissonError, PolyError};
use serde_json::{json, Value};

use crate::expr::SyntaxError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Core(e.into())
    }
}

impl From<PoissonError> for CliError {
    fn from(e: PoissonError) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Usage(_) => "usage",
            CliError::Syntax(_) => "syntax",
            CliError::Core(Error::Poly(PolyError::UnknownVariable(_))) => "unknown_variable",
            CliError::Core(Error::Poly(PolyError::BudgetExceeded(_))) => "budget",
            CliError::Core(Error::Verification(_) | Error::Mismatch { .. }) => "verification",
            CliError::Core(_) => "algebra",
            CliError::Verification(_) => "verification",
        }
    }

    /// 1 when a computation ran and failed, 2 when the input was rejected.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "verification" | "budget" => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Syntax(s) = self {
            e["offset"] = json!(s.offset);
        }
        json!({ "error": e })
    }
}
