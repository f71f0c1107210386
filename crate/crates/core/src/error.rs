use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Factorization;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomial is not monic with nonzero constant term")]
    NotInMonoid,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(BigUint),
    #[error("degree drops after reduction modulo {0}")]
    DegreeDropped(BigUint),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("residue field of size {0} is too large to enumerate")]
    FieldTooLargeForEnumeration(BigUint),
    #[error("elements belong to different finite fields")]
    FieldMismatch,
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("element is not {0}-integral")]
    NotLIntegral(u64),
    #[error("{0} divides the index [O_K : Z[theta]] and no ideal override was supplied")]
    IndexDivisor(u64),
    #[error("bad reduction at the prime ideal above {0}")]
    BadReductionAtIdeal(u64),
    #[error("{0} divides the norm of the discriminant")]
    BadReductionPrime(u64),
    #[error("curve model is not integral")]
    NotIntegral,
    #[error("singular Weierstrass model (discriminant is zero)")]
    SingularModel,
    #[error("|m_gamma(0)| = {found} but N(q)^h = {expected}")]
    NormMismatch { found: BigUint, expected: BigUint },
    #[error("no usable sieve prime among the supplied ones")]
    NoUsablePrimes,
    #[error("division by zero")]
    DivisionByZero,
    #[error("|Phi| = {order} is not a legal semistability defect order at {ell}")]
    IllegalPhiOrder { ell: u64, order: u32 },
    #[error("{0} is not a negative discriminant")]
    BadDiscriminant(i64),
    #[error("expected a number field of degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("factorization budget exhausted; unsplit cofactors remain")]
    Timeout {
        partial: Factorization,
        unsplit: Vec<BigUint>,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}
