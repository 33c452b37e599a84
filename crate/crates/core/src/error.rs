use crate::toeplitz::MinorIndex;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported (odd primes only)")]
    EvenCharacteristic,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("denominator {denom} is divisible by the modulus {p}")]
    DenominatorZeroModP { denom: u64, p: u64 },
    #[error("malformed rational literal {0:?}")]
    Parse(String),
    #[error("{0} is not a quadratic residue")]
    NonResidue(u64),
    #[error("linear equation is degenerate (zero leading coefficient)")]
    DegenerateLinear,
    #[error("scaling by zero is not invertible")]
    ZeroScalar,
    #[error("index {index} out of range for order {gamma}")]
    IndexOutOfRange { index: usize, gamma: usize },
    #[error("invalid minor index: {0}")]
    InvalidMinor(String),
    #[error("polynomial has degree {degree} > 1 in variable x{var}")]
    DegreeTooHigh { var: usize, degree: u32 },
    #[error("prefix has {got} entries, expected {expected}")]
    PrefixLength { expected: usize, got: usize },
    #[error("prefix is dead: no extension can make all minors nonzero")]
    DeadPrefix,
    #[error("prefix does not extend to a superregular matrix at depth {depth}")]
    DeadEnd { depth: usize, forbidden_len: usize },
    #[error("denominator of expression {index} ({expr}) vanishes at this prefix")]
    DenominatorVanishes { index: usize, expr: &'static str },
    #[error("no closed-form construction for gamma={gamma} over F_{p} (need p >= {min_p})")]
    FieldTooSmall { gamma: usize, p: u64, min_p: u64 },
    #[error("variant {variant} is not applicable over F_{p}")]
    VariantInapplicable { variant: String, p: u64 },
    #[error("unknown construction variant {0:?}")]
    UnknownVariant(String),
    #[error("no embedded witness for gamma={gamma}, p={p}")]
    NoWitness { gamma: usize, p: u64 },
    #[error("witness data file failed its checksum or schema check: {0}")]
    WitnessData(String),
    #[error("construction for gamma={gamma}, p={p} failed verification: {detail}")]
    ConstructionFailed {
        gamma: usize,
        p: u64,
        detail: String,
    },
    #[error("field too large for exhaustive enumeration (p={p}, limit 2^{limit_log2})")]
    FieldTooLargeForSearch { p: u64, limit_log2: u32 },
    #[error("invalid search task: {0}")]
    InvalidTask(String),
    #[error("minor {0:?} is trivial, operation needs a non-trivial minor")]
    TrivialMinor(MinorIndex),
}

pub type Result<T> = std::result::Result<T, Error>;
