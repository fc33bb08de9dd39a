//! Univariate Laurent series at 0 and logarithmic residues.

use thiserror::Error;

use crate::algebra::{FieldSpec, Monomial, MultiPoly, RatFunc, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("expected a univariate input")]
    NotUnivariate,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("inputs live over different fields")]
    FieldMismatch,
}

/// `Σ_{k=valuation}^{truncation} c_k x^k + O(x^{truncation+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    field: FieldSpec,
    valuation: i64,
    truncation: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentSeries {
    pub fn zero(field: FieldSpec, truncation: i64) -> Self {
        LaurentSeries { field, valuation: truncation + 1, truncation, coeffs: Vec::new() }
    }

    /// Builds a series from coefficients starting at `start`, then strips leading zeros.
    pub fn from_coeffs(field: FieldSpec, start: i64, coeffs: Vec<Scalar>, truncation: i64) -> Self {
        let mut s = LaurentSeries { field, valuation: start, truncation, coeffs };
        s.coeffs.truncate((truncation - start + 1).max(0) as usize);
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.valuation += lead as i64;
        if self.coeffs.is_empty() {
            self.valuation = self.truncation + 1;
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Order of the first nonzero coefficient; `truncation + 1` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Option<Scalar> {
        if k > self.truncation {
            return None;
        }
        if k < self.valuation {
            return Some(self.field.zero());
        }
        Some(self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(|| self.field.zero()))
    }

    pub fn residue(&self) -> Option<Scalar> {
        self.coeff(-1)
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.field, other.field, "field mismatch");
        let start = self.valuation + other.valuation;
        let truncation = (self.truncation + other.valuation).min(other.truncation + self.valuation);
        let len = (truncation - start + 1).max(0) as usize;
        let mut out = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        LaurentSeries::from_coeffs(self.field, start, out, truncation)
    }

    /// Term-wise `d/dx`.
    pub fn derivative(&self) -> LaurentSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &self.field.from_i64(self.valuation + i as i64))
            .collect();
        LaurentSeries::from_coeffs(self.field, self.valuation - 1, coeffs, self.truncation - 1)
    }

    pub fn to_string_with(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.valuation + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => mono,
                (false, false) => format!("{c}*{mono}"),
            });
        }
        parts.push(format!("O({var}^{})", self.truncation + 1));
        let mut out = parts[0].clone();
        for t in &parts[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        out
    }
}

fn check_univariate(p: &MultiPoly) -> Result<(), ResidueError> {
    if p.nvars() != 1 {
        return Err(ResidueError::NotUnivariate);
    }
    Ok(())
}

/// Order of vanishing at 0 of a nonzero univariate polynomial.
pub fn order_at_zero(p: &MultiPoly) -> u32 {
    p.terms().map(|(m, _)| m.exponents()[0]).min().expect("nonzero polynomial")
}

/// Dense coefficients of `p / x^{ord}`.
fn shifted_dense(p: &MultiPoly, ord: u32) -> Vec<Scalar> {
    let deg = p.total_degree().unwrap_or(0);
    let mut out = vec![p.field().zero(); (deg - ord + 1) as usize];
    for (m, c) in p.terms() {
        out[(m.exponents()[0] - ord) as usize] = c.clone();
    }
    out
}

/// Exact valuation at 0 of a univariate rational function.
pub fn valuation_of(f: &RatFunc) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(order_at_zero(f.numer()) as i64 - order_at_zero(f.denom()) as i64)
}

/// Expansion of `f` at 0 through `x^order`.
pub fn laurent_of(f: &RatFunc, order: i64) -> Result<LaurentSeries, ResidueError> {
    check_univariate(f.numer())?;
    let field = f.field();
    let Some(v) = valuation_of(f) else { return Ok(LaurentSeries::zero(field, order)) };
    let (a, b) = (order_at_zero(f.numer()), order_at_zero(f.denom()));
    let num = shifted_dense(f.numer(), a);
    let den = shifted_dense(f.denom(), b);
    let len = (order - v + 1).max(0) as usize;
    let inv0 = den[0].inverse().expect("nonzero constant term after shifting");
    // power-series division num / den
    let mut q: Vec<Scalar> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.get(k).cloned().unwrap_or_else(|| field.zero());
        for j in 1..=k.min(den.len() - 1) {
            acc = &acc - &(&den[j] * &q[k - j]);
        }
        q.push(&acc * &inv0);
    }
    Ok(LaurentSeries::from_coeffs(field, v, q, order))
}

/// Coefficient of `x^{-1}` in the expansion of `α g'/g` at 0.
pub fn log_residue(alpha: &RatFunc, g: &MultiPoly) -> Result<Scalar, ResidueError> {
    check_univariate(g)?;
    check_univariate(alpha.numer())?;
    if g.is_zero() {
        return Err(ResidueError::ZeroInput);
    }
    if alpha.field() != g.field() {
        return Err(ResidueError::FieldMismatch);
    }
    let dg = g.partial(0);
    let h = alpha * &RatFunc::new(dg, g.clone()).expect("nonzero");
    let Some(v) = valuation_of(&h) else { return Ok(g.field().zero()) };
    let order = (-v).max(0) + 1;
    Ok(laurent_of(&h, order)?.residue().expect("expanded past x^-1"))
}

/// `x^k` as a univariate rational function, `k` of either sign.
pub fn monomial_ratfunc(field: FieldSpec, k: i64) -> RatFunc {
    let m = MultiPoly::term(field, Monomial::new(vec![k.unsigned_abs() as u32]), field.one());
    if k >= 0 {
        RatFunc::from_poly(m)
    } else {
        RatFunc::new(MultiPoly::one(field, 1), m).expect("nonzero")
    }
}

/// One row of the empirical check of `Res(α dg/g, 0) = 0` for `α ∈ K(x^p)`, `g(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaRow {
    pub alpha: RatFunc,
    pub g: MultiPoly,
    pub residue: Scalar,
    pub vanishes: bool,
}

/// Evaluates the residue over `α = x^{sp}` for `s ∈ [-2, 1]` and all monic
/// `g` of degree at most 2 with `g(0) ≠ 0`.
pub fn residue_lemma_table(field: FieldSpec) -> Vec<LemmaRow> {
    let p = field.characteristic() as i64;
    let consts: Vec<Scalar> = match field.elements() {
        Some(e) => e,
        None => (-2..=2).map(|v| field.from_i64(v)).collect(),
    };
    let x = MultiPoly::var(field, 1, 0);
    let mut gs = Vec::new();
    for c0 in consts.iter().filter(|c| !c.is_zero()) {
        let c0p = MultiPoly::constant(field, 1, c0.clone());
        gs.push(&x + &c0p);
        for c1 in &consts {
            gs.push(&(&x.pow(2) + &x.scale(c1)) + &c0p);
        }
    }
    let stride = if p == 0 { 0 } else { p };
    let mut rows = Vec::new();
    for s in -2..=1 {
        let alpha = monomial_ratfunc(field, s * stride);
        for g in &gs {
            let residue = log_residue(&alpha, g).expect("univariate input");
            rows.push(LemmaRow { alpha: alpha.clone(), g: g.clone(), vanishes: residue.is_zero(), residue });
        }
    }
    rows
}
