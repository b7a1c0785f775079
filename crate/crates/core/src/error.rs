use thiserror::Error;

use crate::arith::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("form is not indefinite: b² = {b2} ≤ ac = {ac}")]
    NotIndefinite { b2: String, ac: String },

    #[error("form coefficients must be positive (a = {a}, b = {b}, c = {c})")]
    NotPositiveCoefficients { a: String, b: String, c: String },

    #[error("reflection parameter {name} = {value} is not an integer")]
    NonIntegralReflection { name: &'static str, value: Rational },

    #[error("element {0} has norm zero and is not invertible")]
    NotInvertible(String),

    #[error("τ_t does not map the support of f into ℤ² (offending point ({m}, {n}))")]
    SupportNotPreserved { m: i64, n: i64 },

    #[error("c/a = {0} is not the square of a positive rational")]
    NotASquare(Rational),

    #[error("orbit of {rep:?} is not admissible")]
    NotAdmissible { rep: (u64, u64) },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: u64, right: u64 },

    #[error("exponent {value} at lattice point ({m}, {n}) is not a non-negative integer")]
    NonIntegralExponent { m: i64, n: i64, value: Rational },

    #[error("f is not admissible for Q: condition f(Ax) = f(Bx) = -f(x) fails at ({m}, {n})")]
    AdmissibilityViolation { m: u64, n: u64 },

    #[error("f must take values in {{0, 1, -1}}; found {0}")]
    NotSignValued(Rational),

    #[error("invalid unit: {0}")]
    InvalidUnit(String),

    #[error("the unit must differ from 1")]
    UnitIsOne,

    #[error("no power ε^j with j ≤ {0} preserves every target coset")]
    IterationExceeded(u32),

    #[error("lattice basis is linearly dependent over ℚ")]
    DegenerateLattice,

    #[error("cone sector rays are zero or proportional")]
    DegenerateSector,

    #[error("multiplier d = {0} does not make d·Nm integral on the coset")]
    NonIntegralMultiplier(Rational),

    #[error("integer overflow while evaluating the form")]
    Overflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
