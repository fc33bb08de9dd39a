//! The field of differential constants `K(z^p)`.
//!
//! In characteristic `p > 0`, `K[z^p]` is represented as an ordinary
//! polynomial ring `K[y]` through `y_j <-> z_j^p`, and `K[z]` is a free
//! `K[z^p]`-module on the reduced monomials `z^b`, `b ∈ [0, p-1]^n`. In
//! characteristic 0 the constants are just `K` and every monomial is its own
//! reduced class.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{FieldSpec, Monomial, MultiPoly, RatFunc, Scalar};
use crate::exterior::{PolyForm, RatForm};
use crate::linalg::PolyMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DConstError {
    #[error("bad arguments: {0}")]
    BadArguments(String),
    #[error("forms have different grades")]
    MixedGrades,
    #[error("forms live over different fields or variable sets")]
    FieldMismatch,
    #[error("value is not a differential constant")]
    NotConstant,
}

/// An element of `K(z^p)`, stored in surrogate variables `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct DConstant {
    value: RatFunc,
}

fn deflate(p: &MultiPoly, k: u32) -> Option<MultiPoly> {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        if m.exponents().iter().any(|e| e % k != 0) {
            return None;
        }
        terms.push((Monomial::new(m.exponents().iter().map(|e| e / k).collect()), c.clone()));
    }
    Some(MultiPoly::from_terms(p.field(), p.nvars(), terms))
}

impl DConstant {
    /// Wraps a rational function in the surrogate variables. In characteristic
    /// 0 the value must be a constant.
    pub fn from_surrogate(value: RatFunc) -> Result<Self, DConstError> {
        if value.field().characteristic() == 0 && !value.is_constant() {
            return Err(DConstError::NotConstant);
        }
        Ok(DConstant { value })
    }

    pub fn from_surrogate_poly(value: MultiPoly) -> Result<Self, DConstError> {
        Self::from_surrogate(RatFunc::from_poly(value))
    }

    pub fn scalar(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        DConstant { value: RatFunc::constant(field, nvars, c) }
    }

    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        DConstant { value: RatFunc::zero(field, nvars) }
    }

    /// Recovers the surrogate representation of `f ∈ K(z)` when `df = 0`.
    pub fn from_function(f: &RatFunc) -> Option<Self> {
        let p = f.field().characteristic();
        if p == 0 {
            return f.is_constant().then(|| DConstant { value: f.clone() });
        }
        let num = deflate(f.numer(), p as u32)?;
        let den = deflate(f.denom(), p as u32)?;
        Some(DConstant { value: RatFunc::new(num, den).expect("nonzero denominator") })
    }

    pub fn surrogate(&self) -> &RatFunc {
        &self.value
    }

    pub fn field(&self) -> FieldSpec {
        self.value.field()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Whether the value lies in the prime subfield.
    pub fn is_scalar(&self) -> bool {
        self.value.is_constant()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        self.value.as_poly().filter(|p| p.is_constant()).map(MultiPoly::constant_term)
    }

    /// The embedding `y_j -> z_j^p` into `K(z)`.
    pub fn embed(&self) -> RatFunc {
        let p = self.field().characteristic();
        if p == 0 || self.value.is_constant() {
            return self.value.clone();
        }
        let k = p as u32;
        RatFunc::new(self.value.numer().inflate(k), self.value.denom().inflate(k)).expect("nonzero denominator")
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        self.embed().to_string_with(vars)
    }
}

/// `a = Σ_b parts[b](z^p) z^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDecomposition {
    field: FieldSpec,
    nvars: usize,
    parts: BTreeMap<Vec<u32>, MultiPoly>,
}

impl ReducedDecomposition {
    pub fn parts(&self) -> &BTreeMap<Vec<u32>, MultiPoly> {
        &self.parts
    }

    pub fn part(&self, b: &[u32]) -> MultiPoly {
        self.parts.get(b).cloned().unwrap_or_else(|| MultiPoly::zero(self.field, self.nvars))
    }

    pub fn recompose(&self) -> MultiPoly {
        let p = self.field.characteristic();
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        for (b, c) in &self.parts {
            let lifted = if p == 0 { c.clone() } else { c.inflate(p as u32) };
            acc = &acc + &lifted.mul_term(&Monomial::new(b.clone()), &self.field.one());
        }
        acc
    }
}

pub fn p_decompose(a: &MultiPoly) -> ReducedDecomposition {
    let field = a.field();
    let nvars = a.nvars();
    let p = field.characteristic() as u32;
    let mut buckets: BTreeMap<Vec<u32>, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in a.terms() {
        let (b, q) = if p == 0 {
            (m.exponents().to_vec(), Monomial::one(nvars))
        } else {
            (m.exponents().iter().map(|e| e % p).collect(), Monomial::new(m.exponents().iter().map(|e| e / p).collect()))
        };
        buckets.entry(b).or_default().push((q, c.clone()));
    }
    let parts = buckets.into_iter().map(|(b, ts)| (b, MultiPoly::from_terms(field, nvars, ts))).collect();
    ReducedDecomposition { field, nvars, parts }
}

pub fn recompose(d: &ReducedDecomposition) -> MultiPoly {
    d.recompose()
}

/// True iff `df = 0`.
pub fn is_dconstant(f: &RatFunc) -> bool {
    RatForm::exact(f).is_zero()
}

fn check_args(n: i64, d: i64, r: i64) -> Result<(), DConstError> {
    if n < 1 {
        return Err(DConstError::BadArguments(format!("n = {n} must be at least 1")));
    }
    if d < 0 {
        return Err(DConstError::BadArguments(format!("d = {d} must be non-negative")));
    }
    if r < 0 || r > n {
        return Err(DConstError::BadArguments(format!("r = {r} must lie in [0, {n}]")));
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> Result<u128, DConstError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul(n - i)
            .ok_or_else(|| DConstError::BadArguments("count overflows 128 bits".into()))?
            / (i + 1);
    }
    Ok(acc)
}

/// `C(n, r) * C(n + m, n)` with `m = min(p - 1, d)` in characteristic `p`.
pub fn nk_paper(n: i64, d: i64, r: i64, field: FieldSpec) -> Result<u128, DConstError> {
    check_args(n, d, r)?;
    let p = field.characteristic();
    let m = if p == 0 { d as u128 } else { (d as u128).min(p as u128 - 1) };
    let (n, r) = (n as u128, r as u128);
    binomial(n, r)?
        .checked_mul(binomial(n + m, n)?)
        .ok_or_else(|| DConstError::BadArguments("count overflows 128 bits".into()))
}

/// Number of `b ∈ [0, p-1]^n` with `|b| <= d`, by inclusion-exclusion.
fn reduced_monomial_count(n: u128, d: u128, p: u128) -> Result<u128, DConstError> {
    let mut acc: i128 = 0;
    let mut k = 0u128;
    while k <= n && k * p <= d {
        let term = binomial(n, k)?
            .checked_mul(binomial(n + d - k * p, n)?)
            .ok_or_else(|| DConstError::BadArguments("count overflows 128 bits".into()))?;
        let term = i128::try_from(term).map_err(|_| DConstError::BadArguments("count overflows 128 bits".into()))?;
        acc += if k.is_multiple_of(2) { term } else { -term };
        k += 1;
    }
    Ok(acc as u128)
}

/// The `K(z^p)`-dimension of the span of polynomial `r`-forms of degree `<= d`.
pub fn dim_forms_exact(n: i64, d: i64, r: i64, field: FieldSpec) -> Result<u128, DConstError> {
    check_args(n, d, r)?;
    let p = field.characteristic();
    let (nu, du, ru) = (n as u128, d as u128, r as u128);
    let classes = if p == 0 { binomial(nu + du, nu)? } else { reduced_monomial_count(nu, du, p as u128)? };
    binomial(nu, ru)?
        .checked_mul(classes)
        .ok_or_else(|| DConstError::BadArguments("count overflows 128 bits".into()))
}

/// Row label of a flattened form: basis index tuple and reduced monomial.
pub type RowKey = (Vec<usize>, Vec<u32>);

#[derive(Clone, Debug)]
pub struct FormsMatrix {
    pub matrix: PolyMatrix,
    pub rows: Vec<RowKey>,
}

fn common_shape(forms: &[PolyForm]) -> Result<(FieldSpec, usize), DConstError> {
    let first = forms.first().ok_or_else(|| DConstError::BadArguments("empty list of forms".into()))?;
    for f in forms {
        if f.grade() != first.grade() {
            return Err(DConstError::MixedGrades);
        }
        if f.field() != first.field() || f.nvars() != first.nvars() {
            return Err(DConstError::FieldMismatch);
        }
    }
    Ok((first.field(), first.nvars()))
}

fn assemble(
    field: FieldSpec,
    nvars: usize,
    columns: Vec<BTreeMap<RowKey, MultiPoly>>,
) -> FormsMatrix {
    let mut keys: Vec<RowKey> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let mut matrix = PolyMatrix::zeros(field, nvars, keys.len(), columns.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (key, v) in col {
            let i = keys.binary_search(&key).expect("key collected above");
            matrix.set(i, j, v);
        }
    }
    FormsMatrix { matrix, rows: keys }
}

/// Column `k` is the reduced-monomial flattening of `forms[k]`; a vector in
/// the kernel over `K(y)` is a `K(z^p)`-linear relation among the forms.
pub fn forms_matrix(forms: &[PolyForm]) -> Result<FormsMatrix, DConstError> {
    let (field, nvars) = common_shape(forms)?;
    let columns = forms
        .iter()
        .map(|f| {
            let mut col = BTreeMap::new();
            for (idx, c) in f.terms() {
                for (b, part) in p_decompose(c).parts {
                    col.insert((idx.clone(), b), part);
                }
            }
            col
        })
        .collect();
    Ok(assemble(field, nvars, columns))
}

/// Column `k` lists the scalar coefficients of `forms[k]`, one row per
/// (basis tuple, monomial); the kernel gives relations with coefficients in `K`.
pub fn coefficient_matrix(forms: &[PolyForm]) -> Result<FormsMatrix, DConstError> {
    let (field, nvars) = common_shape(forms)?;
    let columns = forms
        .iter()
        .map(|f| {
            let mut col = BTreeMap::new();
            for (idx, c) in f.terms() {
                for (m, s) in c.terms() {
                    col.insert((idx.clone(), m.exponents().to_vec()), MultiPoly::constant(field, nvars, s.clone()));
                }
            }
            col
        })
        .collect();
    Ok(assemble(field, nvars, columns))
}
