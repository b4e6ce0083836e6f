use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity {arity} out of range (supported: 1..=6)")]
    ArityOutOfRange { arity: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: u8, got: u8 },

    #[error("assignment length {got} does not match arity {expected}")]
    AssignmentLength { expected: usize, got: usize },

    #[error("truth table mask {mask:#x} has bits set beyond 2^{arity} positions")]
    MaskOverflow { arity: u8, mask: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "state cap exceeded: visited {visited} parameter sets (cap {cap}), \
         {functions_so_far} distinct functions found before aborting"
    )]
    StateCapExceeded {
        visited: u64,
        cap: u64,
        functions_so_far: usize,
    },

    #[error(
        "budget cap {cap} reached without hitting the target count {target_count}: \
         best was {best_count} functions at budget {best_budget}"
    )]
    BudgetNotReached {
        cap: u32,
        best_budget: u32,
        best_count: usize,
        target_count: usize,
    },

    #[error("oracle cache at {path}: {reason}")]
    Cache { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
