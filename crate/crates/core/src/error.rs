use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor argument violates the family or operation constraints.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    /// The request exceeds what the exact algorithms here support.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A value outside the domain of a function (for example a zero degree).
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-side precondition does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    Numeric { sweeps: usize, residual: f64 },
}
