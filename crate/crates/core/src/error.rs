use thiserror::Error;

/// Errors raised by the exact arithmetic kernels and the certificate builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("evaluation grid needs {needed} points but the largest supported extension of F_{p} has {available}")]
    GridTooSmall { p: u64, needed: usize, available: usize },
    #[error("no hardcoded irreducible polynomial for F_{p}^{k}")]
    NoExtensionField { p: u64, k: u32 },
    #[error("determinant strategies disagree: fraction-free gave {fraction_free}, evaluation grid gave {grid}")]
    StrategyDisagreement { fraction_free: String, grid: String },
    #[error("fraction-free elimination exceeded its budget ({0})")]
    BudgetExceeded(String),
    #[error("inexact division in polynomial ring")]
    InexactDivision,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("structure constants violate {0}")]
    InvalidStructure(String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("arithmetic certificate failed: {0}")]
    CertificateFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible at desk scale: {0}")]
    Infeasible(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
