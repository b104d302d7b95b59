use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no primary associate: {0}")]
    NoPrimaryAssociate(String),
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("bad modulus: norm {norm} is not 1 mod {m}")]
    BadModulus { norm: i128, m: u32 },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("precision unachievable: wanted {target:e}, got {achieved:e}")]
    PrecisionUnachievable { target: f64, achieved: f64 },
    #[error("argument is a lattice point")]
    PoleAtLatticePoint,
    #[error("prime {0} divides the conductor")]
    BadPrime(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("good reduction at {0}")]
    GoodReduction(u64),
    #[error("recognition failed: {0}")]
    RecognitionFailed(String),
    #[error("valuation of zero")]
    ZeroValuation,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("empty twist: no primes in D")]
    EmptyTwist,
    #[error("L-value vanishes")]
    VanishingLValue,
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
