//! Sparse polynomials over the rationals and Gröbner bases.

mod groebner;
mod ideal;
mod int;
mod monomial;
mod parse;
mod ring;

pub use groebner::{buchberger, is_groebner_basis, normal_form, Budget, GroebnerBasis};
pub use ideal::{eliminate, radical_contains, saturate, saturate_by_each};
pub use int::Int;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use ring::{Polynomial, Ring};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} variables exceed the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("invalid variable name '{0}'")]
    BadVariableName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("block split {0} exceeds the number of variables")]
    BadBlock(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("budget exhausted after {steps} reduction steps")]
    Timeout { steps: u64, partial: Vec<Polynomial> },
}

impl PolyError {
    pub fn is_timeout(&self) -> bool {
        matches!(self, PolyError::Timeout { .. })
    }
}
