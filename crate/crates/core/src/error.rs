use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field order {p}^{e} is outside the supported range")]
    OrderTooLarge { p: u64, e: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("elements belong to different fields ({left} vs {right})")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0}")]
    Domain(String),

    #[error("polynomials are not coprime: gcd = {gcd}")]
    NotCoprime { gcd: Poly },

    #[error("matrix is singular")]
    Singular,

    #[error("enumeration of {required} codewords exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("code is not LCD (hull contains {})", format_vector(.witness))]
    NotLcd { witness: Vec<FieldElement> },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

fn format_vector(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
