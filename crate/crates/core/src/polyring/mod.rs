//! Exact sparse multivariate polynomials over GF(p) with block structure and
//! a bigrading (`deg x_i = (1,0)`, `deg T_i = (0,1)`).

mod field;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use field::{is_prime, PrimeField, MAX_CHARACTERISTIC};
pub use monomial::{var_mask, Monomial, MAX_EXPONENT, MAX_VARS};
pub use order::MonomialOrder;
pub use poly::{Polynomial, Term};
pub use ring::{same_ring, Ring, RingDescriptor, VariableBlock};

pub(crate) use poly::try_sub_scaled_shifted;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("duplicate block or variable name `{0}`")]
    DuplicateName(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidName(String),
    #[error("{0} variables exceed the supported maximum of 16")]
    TooManyVariables(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("exponent exceeds 127")]
    ExponentOverflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),
}
