//! Differential forms, vector fields and the multilinear operators behind the wedge product.
//!
//! Forms are stored on the basis `dz_{i_1} ∧ ... ∧ dz_{i_r}` with strictly
//! increasing indices. The wedge product uses shuffle signs, which is the
//! exterior algebra over any commutative ring; on pairs of 1-forms it agrees
//! with `A(f ⊗ g)` (see [`MultiTensor::alt`]).

mod form;
mod tensor;
mod vector_field;

use thiserror::Error;

use crate::algebra::{AlgebraError, MultiPoly, RatFunc};

pub use form::{Coefficient, DiffForm, PolyForm, RatForm};
pub use tensor::{MultiTensor, MAX_OPERATOR_ARITY};
pub use vector_field::{pair, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("forms live over different fields or variable sets")]
    FieldMismatch,
    #[error("forms have different grades")]
    GradeMismatch,
    #[error("index tuple {0:?} is not strictly increasing or out of range")]
    BadIndexTuple(Vec<usize>),
    #[error("form has a non-polynomial coefficient")]
    NonPolynomialCoefficient,
    #[error("tensor arity {0} exceeds the supported maximum of 3")]
    ArityTooLarge(usize),
    #[error("dimensions do not match")]
    DimensionMismatch,
    #[error("input must be nonconstant")]
    ConstantInput,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn wedge<C: Coefficient>(f: &DiffForm<C>, g: &DiffForm<C>) -> Result<DiffForm<C>, ExteriorError> {
    f.wedge(g)
}

pub fn ext_d<C: Coefficient>(f: &DiffForm<C>) -> DiffForm<C> {
    f.d()
}

pub fn alt_operator(t: &MultiTensor) -> Result<MultiTensor, ExteriorError> {
    t.alt()
}

pub fn sym_operator(t: &MultiTensor) -> Result<MultiTensor, ExteriorError> {
    t.sym()
}

/// Degree of a form with polynomial coefficients; `Ok(None)` is the `-∞` of the zero form.
pub fn form_degree(f: &RatForm) -> Result<Option<u32>, ExteriorError> {
    Ok(f.to_poly()?.degree())
}

pub fn vf_apply(x: &VectorField, f: &MultiPoly) -> Result<RatFunc, ExteriorError> {
    x.apply(f)
}

pub fn vf_invariant(x: &VectorField, f: &MultiPoly) -> Result<bool, ExteriorError> {
    x.is_invariant(f)
}
