use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Precondition violations raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} must be below 2^31")]
    ModulusTooLarge(u64),
    #[error("modulus {q} is below the minimum {min} required for iterated logarithms")]
    ModulusTooSmall { q: u64, min: u64 },
    #[error("sigma = {0} lies outside (1/2, 1]")]
    SigmaOutOfRange(f64),
    #[error("pole at sigma = 1")]
    Pole,
    #[error("argument {0} must be positive")]
    NonPositiveArgument(f64),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("arguments must be coprime to the modulus {0}")]
    NotCoprime(u64),
    #[error("prime cutoff {cutoff} must be below the modulus {q}")]
    CutoffTooLarge { cutoff: f64, q: u64 },
    #[error("cutoff X = {0} must be at least 2")]
    CutoffBelowTwo(f64),
    #[error("L-series cutoff Y = {y} is below the resonator cutoff X = {x}")]
    YBelowX { x: f64, y: f64 },
    #[error("B = {0} must exceed log 4")]
    BTooSmall(f64),
    #[error("{0} is only defined for the linear weight scheme")]
    LinearSchemeOnly(&'static str),
    #[error("X = {0} must be at least 10")]
    IntegralDomain(f64),
    #[error("removing the principal character leaves S2* = {0} <= 0")]
    DegenerateScale(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
