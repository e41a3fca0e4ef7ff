use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("degree d must be at least 1")]
    ZeroDegree,
    #[error("twist u = {u} out of range [0, {max}]")]
    TwistOutOfRange { u: u64, max: u64 },
    #[error("parameters overflow the supported integer range")]
    ParameterOverflow,

    #[error("slopes decrease at index {index}; polygon would not be convex")]
    NonConvexSlopes { index: usize },
    #[error("lower hull of an empty point set")]
    EmptyPointSet,
    #[error("polygon domain does not cover the requested range")]
    DomainMismatch,
    #[error("negative scaling factor")]
    NegativeScale,

    #[error("supplied modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: usize, got: usize },
    #[error("supplied modulus is not monic")]
    ModulusNotMonic,
    #[error("supplied modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("p^N = {p}^{n} does not fit the 63-bit working modulus")]
    PrecisionOverflow { p: u64, n: u32 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("Artin-Hasse coefficient lambda_{index} is not p-integral")]
    NonIntegralArtinHasse { index: usize },
    #[error("Artin-Hasse coefficient lambda_{index} requested but only {available} supplied")]
    LambdaIndexOutOfRange { index: usize, available: usize },

    #[error("polynomial needs {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("leading coefficient a_d must be nonzero")]
    LeadingCoefficientZero,
    #[error("coefficient code {code} is not an element of F_{q}")]
    CoefficientOutOfRange { code: u64, q: u64 },
    #[error("enumeration of {size} points exceeds the guard {limit}")]
    EnumerationGuard { size: u128, limit: u128 },
    #[error("valuation not resolved below the precision cap {cap}")]
    PrecisionExhausted { cap: u64 },
    #[error("p = {p} divides d = {d}")]
    PDividesDegree { p: u64, d: u64 },
    #[error("{m} is not invertible modulo p")]
    NonInvertible { m: u64 },
    #[error("hypothesis p > 4d - eps(u) fails: p = {p}, 4d - eps = {bound}")]
    SmallPrime { p: u64, bound: i64 },
    #[error("n = {n} outside the admissible range [{lo}, {hi}]")]
    IndexOutOfRange { n: u64, lo: u64, hi: u64 },

    #[error("operation requires a = 1 (q = p), got a = {a}")]
    RequiresPrimeField { a: u32 },
    #[error("{subsets} row subsets exceed the minor budget {limit}")]
    MinorBudget { subsets: u128, limit: u128 },
    #[error("polynomial expansion exceeds {limit} terms")]
    TermBudget { limit: usize },
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}
