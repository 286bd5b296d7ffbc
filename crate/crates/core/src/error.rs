use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {p}^{n} exceeds the 2^20 cap")]
    TooLarge { p: u64, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs an even extension degree, got n = {0}")]
    OddDegree(u32),
    #[error("operation needs characteristic 2, got p = {0}")]
    OddCharacteristic(u32),
    #[error("operation needs odd characteristic")]
    EvenCharacteristic,
    #[error("coefficient vector does not describe an element of GF({q})")]
    BadCoefficients { q: u32 },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("degenerate 2x2 matrix")]
    Degenerate2x2,
    #[error("all-zero homogeneous coordinates")]
    ZeroVector,
    #[error("q = {0} is not an odd square")]
    NotOddSquare(u32),
    #[error("q = {q}: sqrt(q) mod 4 must be {expected}")]
    WrongResidue { q: u32, expected: u32 },
    #[error("q = {0} is not an odd power of 2 (with exponent >= 3)")]
    NotOddPower(u32),
    #[error("q = {0} is not even")]
    NotEven(u32),
    #[error("q = {0} has no nonzero trace-zero element")]
    NoValidLambda(u32),
    #[error("lambda must be a nonzero trace-zero element")]
    InvalidLambda,
    #[error("squared parameter set is not an additive subgroup")]
    NotAdditive,
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("input set is not independent: {0} ~ {1}")]
    NotIndependentInput(usize, usize),
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}
