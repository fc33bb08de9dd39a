use crate::algebra::{FieldSpec, MultiPoly, RatFunc};

use super::form::{Coefficient, DiffForm};
use super::ExteriorError;

/// A rational vector field `X = sum_i X(z_i) ∂/∂z_i`, acting as a derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    field: FieldSpec,
    components: Vec<RatFunc>,
}

impl VectorField {
    pub fn new(field: FieldSpec, components: Vec<RatFunc>) -> Result<Self, ExteriorError> {
        let n = components.len();
        if components.iter().any(|c| c.field() != field || c.nvars() != n) {
            return Err(ExteriorError::DimensionMismatch);
        }
        Ok(VectorField { field, components })
    }

    pub fn polynomial(field: FieldSpec, components: Vec<MultiPoly>) -> Result<Self, ExteriorError> {
        Self::new(field, components.into_iter().map(RatFunc::from_poly).collect())
    }

    /// The coordinate field `∂/∂z_i`.
    pub fn coordinate(field: FieldSpec, nvars: usize, i: usize) -> Self {
        let components = (0..nvars)
            .map(|k| if k == i { RatFunc::one(field, nvars) } else { RatFunc::zero(field, nvars) })
            .collect();
        VectorField { field, components }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(RatFunc::is_polynomial)
    }

    fn check(&self, f: &MultiPoly) -> Result<(), ExteriorError> {
        if f.field() != self.field || f.nvars() != self.nvars() {
            return Err(ExteriorError::DimensionMismatch);
        }
        Ok(())
    }

    /// `X(F) = sum_i X_i ∂F/∂z_i`.
    pub fn apply(&self, f: &MultiPoly) -> Result<RatFunc, ExteriorError> {
        self.check(f)?;
        let mut acc = RatFunc::zero(self.field, self.nvars());
        for (i, xi) in self.components.iter().enumerate() {
            let di = f.partial(i);
            if !di.is_zero() {
                acc = &acc + &xi.mul_poly(&di);
            }
        }
        Ok(acc)
    }

    /// Applies `X` to a rational function.
    pub fn apply_rational(&self, f: &RatFunc) -> Result<RatFunc, ExteriorError> {
        if f.field() != self.field || f.nvars() != self.nvars() {
            return Err(ExteriorError::DimensionMismatch);
        }
        let mut acc = RatFunc::zero(self.field, self.nvars());
        for (i, xi) in self.components.iter().enumerate() {
            acc = &acc + &(xi * &f.partial(i));
        }
        Ok(acc)
    }

    /// Whether `F` divides `X(F)`; `X` must be polynomial and `F` nonconstant.
    pub fn is_invariant(&self, f: &MultiPoly) -> Result<bool, ExteriorError> {
        self.check(f)?;
        if f.is_constant() {
            return Err(ExteriorError::ConstantInput);
        }
        if !self.is_polynomial() {
            return Err(ExteriorError::NonPolynomialCoefficient);
        }
        let xf = self.apply(f)?;
        let xf = xf.as_poly().expect("polynomial field applied to a polynomial");
        Ok(xf.is_zero() || xf.is_divisible_by(f))
    }
}

/// Evaluates a 1-form on a vector field: `ω(X) = sum_i ω_i X_i`.
pub fn pair<C: Coefficient>(omega: &DiffForm<C>, x: &VectorField) -> Result<RatFunc, ExteriorError> {
    if omega.grade() != 1 {
        return Err(ExteriorError::GradeMismatch);
    }
    if omega.nvars() != x.nvars() || omega.field() != x.field() {
        return Err(ExteriorError::DimensionMismatch);
    }
    let mut acc = RatFunc::zero(x.field(), x.nvars());
    for (idx, c) in omega.terms() {
        acc = &acc + &(&c.to_ratfunc() * &x.components()[idx[0]]);
    }
    Ok(acc)
}
