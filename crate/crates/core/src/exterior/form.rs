use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::algebra::{default_var_names, FieldSpec, MultiPoly, RatFunc, Scalar};

use super::ExteriorError;

/// Coefficient ring of a differential form: `K[z]` or `K(z)`.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero(field: FieldSpec, nvars: usize) -> Self;
    fn one(field: FieldSpec, nvars: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn partial(&self, i: usize) -> Self;
    fn to_ratfunc(&self) -> RatFunc;
    fn to_string_with(&self, vars: &[String]) -> String;
    /// Whether printing needs parentheses when followed by `*dz`.
    fn is_compound(&self) -> bool;
}

impl Coefficient for MultiPoly {
    fn zero(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly::zero(field, nvars)
    }
    fn one(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly::one(field, nvars)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        MultiPoly::scale(self, c)
    }
    fn partial(&self, i: usize) -> Self {
        MultiPoly::partial(self, i)
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(self.clone())
    }
    fn to_string_with(&self, vars: &[String]) -> String {
        MultiPoly::to_string_with(self, vars)
    }
    fn is_compound(&self) -> bool {
        self.num_terms() > 1
    }
}

impl Coefficient for RatFunc {
    fn zero(field: FieldSpec, nvars: usize) -> Self {
        RatFunc::zero(field, nvars)
    }
    fn one(field: FieldSpec, nvars: usize) -> Self {
        RatFunc::one(field, nvars)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        RatFunc::scale(self, c)
    }
    fn partial(&self, i: usize) -> Self {
        RatFunc::partial(self, i)
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
    fn to_string_with(&self, vars: &[String]) -> String {
        RatFunc::to_string_with(self, vars)
    }
    fn is_compound(&self) -> bool {
        !self.is_polynomial() || self.numer().num_terms() > 1
    }
}

/// A differential form of fixed grade in the basis `dz_I`, `I` strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm<C: Coefficient> {
    field: FieldSpec,
    nvars: usize,
    grade: usize,
    coeffs: BTreeMap<Vec<usize>, C>,
}

/// Form with polynomial coefficients.
pub type PolyForm = DiffForm<MultiPoly>;
/// Form with rational-function coefficients.
pub type RatForm = DiffForm<RatFunc>;

/// Sign of the permutation sorting the concatenation `a ++ b` of two strictly
/// increasing index lists, or `None` if they share an index.
pub(crate) fn shuffle_sign(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((inversions % 2 == 1, merged))
}

impl<C: Coefficient> DiffForm<C> {
    pub fn zero(field: FieldSpec, nvars: usize, grade: usize) -> Self {
        DiffForm { field, nvars, grade, coeffs: BTreeMap::new() }
    }

    /// A grade-0 form (a function).
    pub fn function(field: FieldSpec, nvars: usize, f: C) -> Self {
        let mut out = Self::zero(field, nvars, 0);
        out.add_term(Vec::new(), f);
        out
    }

    /// The basis 1-form `dz_i`.
    pub fn dz(field: FieldSpec, nvars: usize, i: usize) -> Self {
        let mut out = Self::zero(field, nvars, 1);
        out.add_term(vec![i], C::one(field, nvars));
        out
    }

    /// The 1-form `sum_i coeffs[i] dz_i`.
    pub fn one_form(field: FieldSpec, coeffs: Vec<C>) -> Self {
        let nvars = coeffs.len();
        let mut out = Self::zero(field, nvars, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.add_term(vec![i], c);
        }
        out
    }

    /// Builds a form from `(I, c)` pairs; each `I` must be strictly increasing
    /// and of length `grade`.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, grade: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (Vec<usize>, C)>,
    {
        let mut out = Self::zero(field, nvars, grade);
        for (idx, c) in terms {
            if idx.len() != grade || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= nvars) {
                return Err(ExteriorError::BadIndexTuple(idx));
            }
            out.add_term(idx, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: C) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if next.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, next);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> C {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| C::zero(self.field, self.nvars))
    }

    /// The coefficient of `dz_i` of a 1-form.
    pub fn component(&self, i: usize) -> C {
        self.coeff(&[i])
    }

    /// Nonzero coefficients in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> {
        self.coeffs.iter()
    }

    pub fn compatible(&self, other: &DiffForm<C>) -> Result<(), ExteriorError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(ExteriorError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm<C>) -> Result<DiffForm<C>, ExteriorError> {
        self.compatible(other)?;
        if self.grade != other.grade {
            return Err(ExteriorError::GradeMismatch);
        }
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm<C>) -> Result<DiffForm<C>, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm<C> {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &Scalar) -> DiffForm<C> {
        self.map_coeffs(|a| a.scale(c))
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn mul_fn(&self, f: &C) -> DiffForm<C> {
        self.map_coeffs(|a| a.mul(f))
    }

    pub fn map_coeffs<F>(&self, f: F) -> DiffForm<C>
    where
        F: Fn(&C) -> C,
    {
        let mut out = Self::zero(self.field, self.nvars, self.grade);
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    /// Wedge product on the increasing-index basis (shuffle signs).
    pub fn wedge(&self, other: &DiffForm<C>) -> Result<DiffForm<C>, ExteriorError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.field, self.nvars, self.grade + other.grade);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if let Some((negative, merged)) = shuffle_sign(i, j) {
                    let c = a.mul(b);
                    out.add_term(merged, if negative { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm<C> {
        let mut out = Self::zero(self.field, self.nvars, self.grade + 1);
        for (idx, c) in &self.coeffs {
            for k in 0..self.nvars {
                if idx.contains(&k) {
                    continue;
                }
                let dc = c.partial(k);
                if dc.is_zero() {
                    continue;
                }
                // dz_k ∧ dz_I: move dz_k past the indices smaller than k
                let before = idx.iter().filter(|&&i| i < k).count();
                let mut merged = idx.clone();
                merged.insert(before, k);
                out.add_term(merged, if before % 2 == 1 { dc.neg() } else { dc });
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatForm {
        let mut out = RatForm::zero(self.field, self.nvars, self.grade);
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), c.to_ratfunc());
        }
        out
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (idx, c) in &self.coeffs {
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", vars[i])).collect();
            let basis = basis.join("∧");
            let cs = c.to_string_with(vars);
            let term = if basis.is_empty() {
                cs
            } else if cs == "1" {
                basis
            } else if cs == "-1" {
                format!("-{basis}")
            } else if c.is_compound() {
                format!("({cs})*{basis}")
            } else {
                format!("{cs}*{basis}")
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for t in &parts[1..] {
            match t.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    }
}

impl<C: Coefficient> std::fmt::Display for DiffForm<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl PolyForm {
    /// `dF` for a polynomial `F`.
    pub fn exact(f: &MultiPoly) -> PolyForm {
        PolyForm::function(f.field(), f.nvars(), f.clone()).d()
    }

    /// Maximum total degree of the coefficients; `None` stands for `-∞` (zero form).
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(MultiPoly::total_degree).max()
    }

    /// Divides every coefficient exactly by `f`, if possible.
    pub fn exact_div(&self, f: &MultiPoly) -> Option<PolyForm> {
        let mut out = PolyForm::zero(self.field, self.nvars, self.grade);
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), c.exact_div(f).ok()?);
        }
        Some(out)
    }
}

impl RatForm {
    /// `df` for a rational function `f`.
    pub fn exact(f: &RatFunc) -> RatForm {
        RatForm::function(f.field(), f.nvars(), f.clone()).d()
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(RatFunc::is_polynomial)
    }

    pub fn to_poly(&self) -> Result<PolyForm, ExteriorError> {
        let mut out = PolyForm::zero(self.field, self.nvars, self.grade);
        for (idx, c) in &self.coeffs {
            let p = c.as_poly().ok_or(ExteriorError::NonPolynomialCoefficient)?;
            out.add_term(idx.clone(), p.clone());
        }
        Ok(out)
    }

    /// Writes the form as `N / D` with `N` polynomial and `D` the monic lcm of
    /// the coefficient denominators.
    pub fn clear_denominators(&self) -> (PolyForm, MultiPoly) {
        let mut den = MultiPoly::one(self.field, self.nvars);
        for c in self.coeffs.values() {
            if c.denom().is_one() {
                continue;
            }
            let g = crate::algebra::poly_gcd(&den, c.denom()).expect("nonzero");
            den = &den * &c.denom().exact_div(&g).expect("gcd divides");
        }
        let mut num = PolyForm::zero(self.field, self.nvars, self.grade);
        for (idx, c) in &self.coeffs {
            let factor = den.exact_div(c.denom()).expect("lcm is a multiple");
            num.add_term(idx.clone(), c.numer() * &factor);
        }
        (num, den)
    }
}
