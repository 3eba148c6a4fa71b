//! Q-systems, Zhukovsky analytics and Bethe ansatz checks for SU(2|2) quantum spectral curves.
//!
//! The exact layer ([`exact`], [`qsystem`], [`tysystem`]) works over twisted polynomials with
//! Gaussian-rational coefficients. The numeric layer ([`analytic`], [`hubbard`], [`ed`],
//! [`ads3`]) works in `f64` complex arithmetic. [`suite`] bundles the acceptance battery
//! used by the `qsc suite` command.

pub mod ads3;
pub mod analytic;
pub mod ed;
pub mod exact;
mod grassmann;
pub mod hubbard;
pub mod newton;
pub mod qsystem;
pub mod suite;
pub mod tysystem;

pub use num_complex::Complex64;

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("multi-term divisor needs a unique largest and smallest twist modulus")]
    UnsupportedDivisor,
    #[error("operation requires an untwisted polynomial")]
    Twisted,
    #[error("generated Q-system fails its QQ-relation audit: {0}")]
    InconsistentSigns(String),
    #[error("degenerate Q-system: {0}")]
    Degenerate(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("corner Q-function {0} is missing")]
    MissingCorner(&'static str),
    #[error("zero denominator at T-cell ({0},{1})")]
    ZeroDenominatorCell(i64, i64),
    #[error("degenerate twist: {0}")]
    DegenerateTwist(String),
    #[error("point lies on the cut [-h, h]; a side flag is required")]
    OnCut,
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("no convergence after {steps} steps, residual {residual:e}")]
    NoConvergence { steps: usize, residual: f64 },
    #[error("roots collided along the continuation path at step {0}")]
    PathCollision(usize),
    #[error("sector dimension {0} exceeds the cap")]
    SectorTooLarge(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shell condition violated: {0}")]
    ShellViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
