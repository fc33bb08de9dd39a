//! Darboux integration: invariance, cofactors, dependence over `K(z^p)`,
//! tangent logarithmic forms and certified first integrals.
//!
//! Every positive result carries a [`Certificate`] whose witnesses are
//! re-checked by exact polynomial arithmetic.

mod certificate;
mod integral;
mod logform;

use thiserror::Error;

use crate::algebra::{is_irreducible_with_budget, AlgebraError, MultiPoly};
use crate::dconst::{forms_matrix, DConstError, DConstant};
use crate::exterior::{ExteriorError, PolyForm};
use crate::linalg::ff_kernel;

pub use certificate::{Certificate, Claim, Witness};
pub use integral::{
    first_integral_check, multiplicative_integral, normalize_exponents, rational_first_integral, FirstIntegral,
    MultiplicativeResult, PairDiagnostics, RationalResult, SubsetStrategy,
};
pub use logform::LogForm;

/// Trial-division budget used when annotating certificates with irreducibility.
const NOTE_BUDGET: u128 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DarbouxError {
    #[error("dF = 0: the polynomial is a p-th power")]
    ZeroDifferential,
    #[error("invariant candidates must be nonconstant")]
    ConstantInput,
    #[error("expected a polynomial 1-form")]
    NotOneForm,
    #[error("polynomial is not invariant")]
    NotInvariant,
    #[error("dependence vector is zero")]
    ZeroVector,
    #[error("logarithmic form expanded to zero despite a nonzero coefficient vector")]
    ExpandedToZero,
    #[error("cofactors are independent over the differential constants")]
    NoDependence,
    #[error("no dependence with coefficients in the prime field")]
    NoConstantDependence,
    #[error("every candidate pair of logarithmic forms has the same polar support")]
    IdenticalPolarSupport,
    #[error("every ratio of logarithmic forms is a differential constant")]
    DegenerateRatio,
    #[error("no pair of logarithmic forms is proportional")]
    NoProportionalPair,
    #[error("internal certificate failure: tangency did not verify")]
    NotTangent,
    #[error("at least {0} invariants are required")]
    TooFewInvariants(usize),
    #[error("lengths of coefficient vector and polynomial list differ")]
    LengthMismatch,
    #[error("inputs live over different fields or variable sets")]
    FieldMismatch,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    DConst(#[from] DConstError),
}

/// `Θ_F = ω ∧ dF / F` together with its source polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Cofactor {
    pub form: PolyForm,
    pub source: MultiPoly,
}

fn check_shape(omega: &PolyForm, f: &MultiPoly) -> Result<(), DarbouxError> {
    if omega.grade() != 1 {
        return Err(DarbouxError::NotOneForm);
    }
    if omega.field() != f.field() || omega.nvars() != f.nvars() {
        return Err(DarbouxError::FieldMismatch);
    }
    Ok(())
}

pub(crate) fn irreducibility_note(f: &MultiPoly) -> String {
    let verdict = is_irreducible_with_budget(f, NOTE_BUDGET).map(|v| v.as_str()).unwrap_or("unchecked");
    format!("irreducibility: {verdict}")
}

/// Checks whether `F` divides `ω ∧ dF`.
pub fn form_invariant(omega: &PolyForm, f: &MultiPoly) -> Result<Certificate, DarbouxError> {
    check_shape(omega, f)?;
    if f.is_constant() {
        return Err(DarbouxError::ConstantInput);
    }
    let df = PolyForm::exact(f);
    if df.is_zero() {
        return Err(DarbouxError::ZeroDifferential);
    }
    let w = omega.wedge(&df)?;
    let quotient = w.exact_div(f);
    let cert = Certificate::new(Witness::Invariance { omega: omega.clone(), poly: f.clone(), quotient });
    Ok(cert.with_note(irreducibility_note(f)))
}

pub fn cofactor(omega: &PolyForm, f: &MultiPoly) -> Result<Cofactor, DarbouxError> {
    match form_invariant(omega, f)?.witness {
        Witness::Invariance { quotient: Some(form), .. } => Ok(Cofactor { form, source: f.clone() }),
        _ => Err(DarbouxError::NotInvariant),
    }
}

/// Spanning set of the `K(z^p)`-relations `Σ λ_i Θ_i = 0`; each vector is
/// re-verified by expanding the sum.
pub fn cofactor_dependence(cofactors: &[Cofactor]) -> Result<Vec<Vec<DConstant>>, DarbouxError> {
    if cofactors.is_empty() {
        return Ok(Vec::new());
    }
    let forms: Vec<PolyForm> = cofactors.iter().map(|c| c.form.clone()).collect();
    let fm = forms_matrix(&forms)?;
    let mut out = Vec::new();
    for v in ff_kernel(&fm.matrix) {
        let lambda = v
            .into_iter()
            .map(DConstant::from_surrogate_poly)
            .collect::<Result<Vec<_>, _>>()?;
        let cert = dependence_certificate(cofactors, &lambda);
        if !cert.verified {
            return Err(DarbouxError::NotTangent);
        }
        out.push(lambda);
    }
    Ok(out)
}

pub fn dependence_certificate(cofactors: &[Cofactor], vector: &[DConstant]) -> Certificate {
    Certificate::new(Witness::Dependence {
        cofactors: cofactors.iter().map(|c| c.form.clone()).collect(),
        vector: vector.to_vec(),
    })
}

/// `η = Σ λ_i dF_i / F_i`, rejected when it expands to zero.
pub fn build_logform(lambda: &[DConstant], fs: &[MultiPoly]) -> Result<LogForm, DarbouxError> {
    if lambda.len() != fs.len() || fs.is_empty() {
        return Err(DarbouxError::LengthMismatch);
    }
    if lambda.iter().all(DConstant::is_zero) {
        return Err(DarbouxError::ZeroVector);
    }
    let (field, nvars) = (fs[0].field(), fs[0].nvars());
    for (c, f) in lambda.iter().zip(fs) {
        if f.field() != field || f.nvars() != nvars || c.field() != field || c.surrogate().nvars() != nvars {
            return Err(DarbouxError::FieldMismatch);
        }
        if f.is_constant() {
            return Err(DarbouxError::ConstantInput);
        }
    }
    let eta = LogForm::new(field, nvars, lambda.iter().cloned().zip(fs.iter().cloned()).collect());
    if eta.cleared().0.is_zero() {
        return Err(DarbouxError::ExpandedToZero);
    }
    Ok(eta)
}

/// Checks `ω ∧ η = 0` after clearing denominators.
pub fn tangency_check(omega: &PolyForm, eta: &LogForm) -> Certificate {
    let residual = certificate::tangency_residual(omega, eta);
    Certificate::new(Witness::Tangency { omega: omega.clone(), logform: eta.clone(), residual })
}

impl From<AlgebraError> for DarbouxError {
    fn from(e: AlgebraError) -> Self {
        DarbouxError::Exterior(ExteriorError::Algebra(e))
    }
}
