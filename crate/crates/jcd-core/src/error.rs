use thiserror::Error;

/// Errors surfaced by validation, domain checks and resource guards.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("absolute continuity violated: q({y}|{x}) = 0 while p({y}|{x}) > 0 and px({x}) > 0")]
    AbsoluteContinuity { x: usize, y: usize },

    #[error("cost budget {budget} is infeasible: minimum attainable expected cost is {min_cost}")]
    InfeasibleCost { budget: f64, min_cost: f64 },

    #[error("empty grid")]
    EmptyGrid,

    #[error("enumeration requires {required} states, exceeding the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
