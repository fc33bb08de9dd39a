use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{AlgebraError, FieldSpec, Monomial, Scalar};

/// Sparse multivariate polynomial over a [`FieldSpec`] in `nvars` variables.
///
/// Terms are keyed by graded-lex ordered monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn from_i64(field: FieldSpec, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    /// The coordinate function `z_i` (0-based).
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            debug_assert_eq!(c.field(), field);
            terms.insert(m, c);
        }
        MultiPoly { field, nvars, terms }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub fn compatible(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / divisor`; [`AlgebraError::NotDivisible`] when the
    /// division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm).ok_or(AlgebraError::NotDivisible)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -&(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// True when `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &MultiPoly) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Formal partial derivative with respect to `z_i` (0-based).
    pub fn diff(&self, i: usize) -> Result<MultiPoly, AlgebraError> {
        if i >= self.nvars {
            return Err(AlgebraError::BadIndex(i));
        }
        Ok(self.partial(i))
    }

    pub(crate) fn partial(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exponent(i, e - 1), c * &self.field.from_i64(e as i64));
        }
        out
    }

    /// Evaluates at a point of `K^n`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch);
        }
        if point.iter().any(|s| s.field() != self.field) {
            return Err(AlgebraError::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `z_i -> z_i^k` for every variable.
    pub fn inflate(&self, k: u32) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.inflate(k), c.clone())).collect(),
        }
    }

    /// Coefficients as a polynomial in `z_var`: entry `k` multiplies `z_var^k`
    /// and does not involve `z_var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.field, self.nvars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(field: FieldSpec, nvars: usize, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(field, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in c.terms() {
                let e = m.exponents()[var] + k as u32;
                out.add_term(m.with_exponent(var, e), a.clone());
            }
        }
        out
    }

    /// Maps coefficients through a field homomorphism-like function.
    pub fn map_coeffs<F>(&self, field: FieldSpec, f: F) -> MultiPoly
    where
        F: Fn(&Scalar) -> Scalar,
    {
        Self::from_terms(field, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renders with the given variable names, highest graded-lex term first.
    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(m, vars);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn monomial_string(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

/// Default variable names: `x, y, z` for up to three variables, otherwise `x1..xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.compatible(rhs).is_ok(), "polynomial ring mismatch");
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.compatible(rhs).is_ok(), "polynomial ring mismatch");
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(m.clone(), -c);
        }
        acc
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.compatible(rhs).is_ok(), "polynomial ring mismatch");
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        acc
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        assert!(self.compatible(rhs).is_ok(), "polynomial ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        assert!(self.compatible(rhs).is_ok(), "polynomial ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_in_place {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(mut self, rhs: MultiPoly) -> MultiPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(mut self, rhs: &MultiPoly) -> MultiPoly {
                self.$assign(rhs);
                self
            }
        }
    };
}

forward_in_place!(Add, add, add_assign);
forward_in_place!(Sub, sub, sub_assign);

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        &self * rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
