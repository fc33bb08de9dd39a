//! Exhaustive search for invariant hypersurfaces over small prime fields.

use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{for_each_monic, is_irreducible, monomials_up_to, FieldSpec, Irreducibility, MultiPoly};
use crate::darboux::{form_invariant, DarbouxError};
use crate::exterior::PolyForm;

pub const DEFAULT_MAX_CANDIDATES: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("candidate space of {needed} exceeds the budget of {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("search requires a prime field")]
    NotPrimeField,
    #[error("expected a polynomial 1-form over the budget's field")]
    BadForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_degree: u32,
    pub max_candidates: u128,
    pub field: FieldSpec,
}

impl SearchBudget {
    pub fn new(field: FieldSpec, max_degree: u32) -> Self {
        SearchBudget { max_degree, max_candidates: DEFAULT_MAX_CANDIDATES, field }
    }

    /// `p^{C(n+e, n)}`, saturating.
    pub fn candidate_space(&self, nvars: usize) -> u128 {
        let k = monomials_up_to(nvars, self.max_degree).len() as u32;
        (self.field.characteristic() as u128).saturating_pow(k)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchReport {
    pub invariants: Vec<MultiPoly>,
    pub examined: usize,
    /// Candidates skipped because `dF = 0`.
    pub zero_differential: usize,
    /// Invariant candidates rejected as reducible.
    pub reducible: usize,
    /// Invariant candidates whose irreducibility could not be decided within budget.
    pub undecided: usize,
}

enum Verdict {
    Invariant,
    NotInvariant,
    ZeroDifferential,
    Reducible,
    Undecided,
}

fn classify(omega: &PolyForm, f: &MultiPoly) -> Verdict {
    match form_invariant(omega, f) {
        Err(DarbouxError::ZeroDifferential) => Verdict::ZeroDifferential,
        Ok(c) if c.verified => match is_irreducible(f) {
            Ok(Irreducibility::Irreducible) => Verdict::Invariant,
            Ok(Irreducibility::Reducible) => Verdict::Reducible,
            _ => Verdict::Undecided,
        },
        _ => Verdict::NotInvariant,
    }
}

/// All normalized irreducible `F` of degree at most `max_degree` with `dF ≠ 0`
/// and `F | ω ∧ dF`, in enumeration order, plus counts of what was skipped.
pub fn search_invariants(omega: &PolyForm, budget: &SearchBudget) -> Result<SearchReport, SearchError> {
    if !budget.field.is_prime_field() {
        return Err(SearchError::NotPrimeField);
    }
    if omega.field() != budget.field || omega.grade() != 1 {
        return Err(SearchError::BadForm);
    }
    let n = omega.nvars();
    let needed = budget.candidate_space(n);
    if needed > budget.max_candidates {
        return Err(SearchError::BudgetExceeded { needed, cap: budget.max_candidates });
    }
    let vars: Vec<usize> = (0..n).collect();
    let mut candidates = Vec::new();
    for_each_monic(budget.field, n, &vars, budget.max_degree, |f| {
        candidates.push(f.clone());
        ControlFlow::Continue(())
    });
    let verdicts: Vec<Verdict> = candidates.par_iter().map(|f| classify(omega, f)).collect();
    let mut report = SearchReport { examined: candidates.len(), ..Default::default() };
    for (f, v) in candidates.into_iter().zip(verdicts) {
        match v {
            Verdict::Invariant => report.invariants.push(f),
            Verdict::ZeroDifferential => report.zero_differential += 1,
            Verdict::Reducible => report.reducible += 1,
            Verdict::Undecided => report.undecided += 1,
            Verdict::NotInvariant => {}
        }
    }
    Ok(report)
}

pub fn enumerate_invariants(omega: &PolyForm, budget: &SearchBudget) -> Result<Vec<MultiPoly>, SearchError> {
    Ok(search_invariants(omega, budget)?.invariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64) -> (FieldSpec, MultiPoly, MultiPoly) {
        let f = FieldSpec::Prime(p);
        (f, MultiPoly::var(f, 2, 0), MultiPoly::var(f, 2, 1))
    }

    #[test]
    fn exact_form_over_f2() {
        let (f, x, y) = setup(2);
        let omega = PolyForm::one_form(f, vec![y.clone(), x.clone()]);
        let found = enumerate_invariants(&omega, &SearchBudget::new(f, 1)).unwrap();
        assert!(found.contains(&x) && found.contains(&y));
    }

    #[test]
    fn dx_over_f2() {
        // ω ∧ dF = F_y dx∧dy: F = x and x + 1 have F_y = 0; F = y + ... has F_y = 1
        let (f, x, _) = setup(2);
        let omega = PolyForm::dz(f, 2, 0);
        let found = enumerate_invariants(&omega, &SearchBudget::new(f, 1)).unwrap();
        assert_eq!(found, vec![x.clone(), &x + &MultiPoly::one(f, 2)]);
    }

    #[test]
    fn rotation_over_f3() {
        let (f, x, y) = setup(3);
        let omega = PolyForm::one_form(f, vec![y.clone(), -&x]);
        let found = enumerate_invariants(&omega, &SearchBudget::new(f, 1)).unwrap();
        for g in [x.clone(), y.clone(), &x + &y, &x - &y] {
            assert!(found.contains(&g), "missing {g}");
        }
        assert!(found.iter().all(|g| form_invariant(&omega, g).unwrap().verified));
    }

    #[test]
    fn budget_is_enforced() {
        let (f, x, y) = setup(3);
        let omega = PolyForm::one_form(f, vec![y, x]);
        let mut budget = SearchBudget::new(f, 2);
        budget.max_candidates = 100;
        assert_eq!(
            enumerate_invariants(&omega, &budget),
            Err(SearchError::BudgetExceeded { needed: 729, cap: 100 })
        );
        let q = PolyForm::dz(FieldSpec::Rationals, 2, 0);
        assert_eq!(enumerate_invariants(&q, &SearchBudget::new(FieldSpec::Rationals, 1)), Err(SearchError::NotPrimeField));
    }

    #[test]
    fn p_th_powers_are_counted() {
        let (f, x, y) = setup(2);
        let omega = PolyForm::one_form(f, vec![y, x]);
        let report = search_invariants(&omega, &SearchBudget::new(f, 2)).unwrap();
        // x^2, y^2, x^2 + 1, ... have dF = 0
        assert!(report.zero_differential > 0);
        let again = search_invariants(&omega, &SearchBudget::new(f, 2)).unwrap();
        assert_eq!(report, again);
    }
}
