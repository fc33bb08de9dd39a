//! Exact coefficient fields, multivariate polynomials and rational functions.

mod field;
mod gcd;
mod irreducible;
mod monomial;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use field::{FieldSpec, Scalar};
pub use gcd::poly_gcd;
pub use irreducible::{
    for_each_monic, is_irreducible, is_irreducible_with_budget, monic_count, Irreducibility,
    DEFAULT_TRIAL_BUDGET,
};
pub use monomial::{monomials_up_to, Monomial};
pub use poly::{default_var_names, MultiPoly};
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero has no multiplicative inverse")]
    ZeroInversion,
    #[error("operands live over different fields or variable sets")]
    FieldMismatch,
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("variable index {0} out of range")]
    BadIndex(usize),
    #[error("point dimension does not match the number of variables")]
    DimensionMismatch,
    #[error("input must be nonconstant")]
    ConstantInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
}

pub fn field_inverse(x: &Scalar) -> Result<Scalar, AlgebraError> {
    x.inverse()
}

pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    a.checked_mul(b)
}

pub fn poly_exact_div(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    a.exact_div(b)
}

/// Partial derivative with respect to the `i`-th variable (0-based).
pub fn poly_diff(a: &MultiPoly, i: usize) -> Result<MultiPoly, AlgebraError> {
    a.diff(i)
}

pub fn poly_eval(a: &MultiPoly, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
    a.eval(point)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: RatOp) -> Result<RatFunc, AlgebraError> {
    match op {
        RatOp::Add => a.checked_add(b),
        RatOp::Sub => a.checked_sub(b),
        RatOp::Mul => a.checked_mul(b),
        RatOp::Div => a.checked_div(b),
    }
}
