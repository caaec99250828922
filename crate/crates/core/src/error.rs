use alloc::string::String;
use num_bigint::BigUint;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("field of order {p}^{e} is too large")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("subfield degree {sub_degree} does not divide {degree}")]
    SubDegree { sub_degree: u32, degree: u32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("elements are linearly dependent")]
    DependentBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("duplicate matrix in explicit code")]
    DuplicateCodeword,
    #[error("enumeration needs {needed} items but the limit is {limit}")]
    GuardExceeded { needed: BigUint, limit: u64 },
    #[error("operation requires a linear code")]
    NotLinear,
    #[error("norm condition violated: N(eta) = (-1)^(nk)")]
    NormCondition,
    #[error("gcd({k}, {n}) != 1: x^(2^k+1) is not APN on F_2^{n}")]
    NotApn { n: u32, k: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
