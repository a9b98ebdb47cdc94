use thiserror::Error;

use crate::format::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root order {0}; supported orders are 1..=360")]
    UnsupportedOrder(u64),

    #[error("root order mismatch: {left} vs {right}; embed explicitly first")]
    OrderMismatch { left: u32, right: u32 },

    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "sqrt({n}) is not representable in Q(zeta_{order}): it needs {required_divisor} | M \
         (smallest valid order {required_divisor}, smallest order containing both is {suggested})"
    )]
    SqrtNotRepresentable {
        n: u32,
        order: u32,
        required_divisor: u32,
        suggested: u32,
    },

    #[error("exact sqrt({0}) is only provided for n in {{2, 3, 5}}")]
    UnsupportedSqrt(u32),

    #[error("square-root search in Q(zeta_{order}) needs 2^{sign_bits} sign patterns; limit is 2^{limit}")]
    FieldTooLarge {
        order: u32,
        sign_bits: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entry ({row}, {col}) is not unimodular")]
    NotUnimodular { row: usize, col: usize },

    #[error("entry ({row}, {col}) is zero")]
    ZeroEntry { row: usize, col: usize },

    #[error("{0} is not a complex Hadamard matrix")]
    NotHadamard(String),

    #[error("equivalence search is limited to n <= 5 (got n = {0})")]
    EquivalenceTooLarge(usize),

    #[error("search space of {required} candidates exceeds the budget of {budget} (set HADAMAT_BUDGET to raise it)")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid search task: {0}")]
    InvalidSearch(String),

    #[error("{count} bases exceed the maximum of {max} mutually unbiased bases in dimension {dim}")]
    ExceedsMaximum { count: usize, max: usize, dim: usize },

    #[error("seed is not a set of mutually unbiased bases")]
    InvalidSeed,

    #[error("{0} is not a basis (needs a Hadamard, identity or unitary diagonal matrix)")]
    NotABasis(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
