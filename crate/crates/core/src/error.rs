use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus polynomial is reducible or malformed: {0}")]
    ReducibleModulus(String),
    #[error("field too large: q = {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("dimension {0} outside supported range 1..=16")]
    DimensionOutOfRange(usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("field or dimension mismatch between operands")]
    ContextMismatch,
    #[error("invalid flag signature {0:?} for dimension {1}")]
    SignatureInvalid(Vec<usize>, usize),
    #[error("bad arity: k = {k} for n = {n}")]
    BadArity { n: usize, k: usize },
    #[error("domain of {0} points exceeds the cap; use the oracle fallback")]
    DomainTooLarge(u128),
    #[error("symmetric set is empty")]
    EmptySigma,
    #[error("set is not closed under inverses (use --symmetrize)")]
    NotSymmetric,
    #[error("element degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element kind does not match the domain or group")]
    KindMismatch,
    #[error("charset {charset} is not justified for n = {n} (use force to override)")]
    CharsetInvalidForN { charset: &'static str, n: usize },
    #[error("matrix determinant is not 1")]
    NotUnimodular,
    #[error("theorem hypotheses fail and fallback is forbidden")]
    FallbackForbidden,
    #[error("partition weights differ: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("parameter n = {0} out of range for this operation")]
    BadN(usize),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("group of order {0} is too large for this operation")]
    GroupTooLarge(usize),
    #[error("character value undefined: {0}")]
    ValueUndefined(String),
    #[error("bad character parameters: {0}")]
    BadParams(String),
    #[error("character table unavailable: {0}")]
    TableUnavailable(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: element not in group: {msg}")]
    ElementNotInGroup { line: usize, msg: String },
    #[error("modulus does not match the field: {0}")]
    ModulusMismatch(String),
    #[error("stabilizer chain failed its verification pass")]
    ChainVerification,
}

pub type Result<T> = std::result::Result<T, Error>;
