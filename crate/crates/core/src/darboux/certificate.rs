use crate::algebra::{MultiPoly, RatFunc};
use crate::dconst::DConstant;
use crate::exterior::{PolyForm, RatForm};

use super::LogForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Invariance,
    Dependence,
    Tangency,
    FirstIntegral,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Invariance => "invariance",
            Claim::Dependence => "dependence",
            Claim::Tangency => "tangency",
            Claim::FirstIntegral => "first_integral",
        }
    }
}

/// Exact data from which a claim can be re-derived.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `F · quotient = ω ∧ dF`; `quotient` is absent when no exact quotient exists.
    Invariance { omega: PolyForm, poly: MultiPoly, quotient: Option<PolyForm> },
    /// `Σ λ_i Θ_i = 0`.
    Dependence { cofactors: Vec<PolyForm>, vector: Vec<DConstant> },
    /// `residual = ω ∧ N` where `η = N / D`.
    Tangency { omega: PolyForm, logform: LogForm, residual: PolyForm },
    /// `residual = ω ∧ N` where `df = N / D`; optionally `η₁ = f η₂`.
    RationalIntegral { omega: PolyForm, function: RatFunc, residual: PolyForm, ratio: Option<(LogForm, LogForm)> },
    /// `G = Π F_i^{δ_i}` with `dG = G η`; `residual = ω ∧ N` where `η = N / D`.
    MultiplicativeIntegral { omega: PolyForm, logform: LogForm, residual: PolyForm },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub witness: Witness,
    pub verified: bool,
    pub notes: Vec<String>,
}

pub(crate) fn tangency_residual(omega: &PolyForm, eta: &LogForm) -> PolyForm {
    omega.wedge(&eta.cleared().0).expect("same shape")
}

pub(crate) fn integral_residual(omega: &PolyForm, f: &RatFunc) -> (RatForm, PolyForm) {
    let df = RatForm::exact(f);
    let (num, _) = df.clear_denominators();
    let residual = omega.wedge(&num).expect("same shape");
    (df, residual)
}

fn ratio_holds(f: &RatFunc, pair: &(LogForm, LogForm)) -> bool {
    pair.0.expansion() == pair.1.expansion().mul_fn(f)
}

impl Certificate {
    pub fn new(witness: Witness) -> Self {
        let mut c = Certificate { witness, verified: false, notes: Vec::new() };
        c.verified = c.recheck();
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn claim(&self) -> Claim {
        match self.witness {
            Witness::Invariance { .. } => Claim::Invariance,
            Witness::Dependence { .. } => Claim::Dependence,
            Witness::Tangency { .. } => Claim::Tangency,
            Witness::RationalIntegral { .. } | Witness::MultiplicativeIntegral { .. } => Claim::FirstIntegral,
        }
    }

    /// Re-runs the exact check on the stored witnesses.
    pub fn recheck(&self) -> bool {
        match &self.witness {
            Witness::Invariance { omega, poly, quotient } => {
                if poly.is_constant() {
                    return false;
                }
                let dfp = PolyForm::exact(poly);
                if dfp.is_zero() {
                    return false;
                }
                let Ok(w) = omega.wedge(&dfp) else { return false };
                match quotient {
                    Some(q) => q.mul_fn(poly) == w,
                    None => w.exact_div(poly).is_some(),
                }
            }
            Witness::Dependence { cofactors, vector } => {
                if vector.len() != cofactors.len() || vector.iter().all(DConstant::is_zero) {
                    return false;
                }
                let Some(first) = cofactors.first() else { return false };
                let mut acc = RatForm::zero(first.field(), first.nvars(), first.grade());
                for (lambda, theta) in vector.iter().zip(cofactors) {
                    match acc.add(&theta.to_rat().mul_fn(&lambda.embed())) {
                        Ok(next) => acc = next,
                        Err(_) => return false,
                    }
                }
                acc.is_zero()
            }
            Witness::Tangency { omega, logform, residual } => {
                let fresh = tangency_residual(omega, logform);
                &fresh == residual && fresh.is_zero()
            }
            Witness::RationalIntegral { omega, function, residual, ratio } => {
                let (df, fresh) = integral_residual(omega, function);
                !df.is_zero()
                    && &fresh == residual
                    && fresh.is_zero()
                    && ratio.as_ref().is_none_or(|pair| ratio_holds(function, pair))
            }
            Witness::MultiplicativeIntegral { omega, logform, residual } => {
                let fresh = tangency_residual(omega, logform);
                logform.terms().iter().all(|(c, _)| c.is_scalar())
                    && !logform.expansion().is_zero()
                    && &fresh == residual
                    && fresh.is_zero()
            }
        }
    }

    /// `verified` agrees with a fresh check.
    pub fn is_consistent(&self) -> bool {
        self.verified == self.recheck()
    }
}
