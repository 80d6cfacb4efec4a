use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the prime must be odd, got {0}")]
    EvenPrime(u64),
    #[error("exponent must be at least 2, got {0}")]
    ExponentTooSmall(u32),
    #[error("modulus {p}^{n} exceeds 2^62")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("{x} is not a unit modulo {q}")]
    NotAUnit { x: u64, q: u64 },
    #[error("modulus {q} exceeds the oracle ceiling {ceiling}")]
    OracleScaleExceeded { q: u64, ceiling: u64 },
    #[error("could not allocate {0} table entries")]
    AllocationFailure(u64),
    #[error("enumeration too large: {0}")]
    ScaleExceeded(String),
    #[error("shifts {x} and {y} are congruent modulo {p}")]
    SeparationViolated { x: u64, y: u64, p: u64 },
    #[error("shift set of size {h} is not smaller than p = {p}")]
    CardinalityTooLarge { h: u64, p: u64 },
    #[error("shift set is empty")]
    EmptyShiftSet,
    #[error("shift {0} appears twice")]
    DuplicateShift(u64),
    #[error("operands use different moduli ({left} vs {right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("table has no value at residue {0}")]
    IncompleteTable(u64),
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains NaN")]
    NanInSample,
    #[error("invalid interval [{alpha}, {beta}]")]
    BadInterval { alpha: f64, beta: f64 },
    #[error("quadrature did not converge at t = {t}")]
    QuadratureNotConverged { t: f64 },
    #[error("the coefficient tuple is identically zero")]
    ZeroTuple,
    #[error("multiplicity tuple has empty support")]
    EmptyMultiplicity,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
