//! Irreducibility testing.
//!
//! Over `F_p`: exact for univariate input (Rabin's distinct-degree criterion)
//! and for multivariate input by exhaustive trial division, as long as the
//! number of normalized divisor candidates stays within a budget.
//! Over `Q`: degree, content and rational-root tests, plus reduction modulo
//! small primes; anything else is reported as unknown.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::content_and_primitive;
use super::monomial::monomials_up_to;
use super::{AlgebraError, FieldSpec, Monomial, MultiPoly, Scalar};

/// Outcome of [`is_irreducible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

impl Irreducibility {
    pub fn as_str(&self) -> &'static str {
        match self {
            Irreducibility::Irreducible => "irreducible",
            Irreducibility::Reducible => "reducible",
            Irreducibility::Unknown => "unchecked",
        }
    }
}

/// Default cap on divisor candidates for multivariate trial division.
pub const DEFAULT_TRIAL_BUDGET: u128 = 1 << 18;

pub fn is_irreducible(a: &MultiPoly) -> Result<Irreducibility, AlgebraError> {
    is_irreducible_with_budget(a, DEFAULT_TRIAL_BUDGET)
}

pub fn is_irreducible_with_budget(a: &MultiPoly, budget: u128) -> Result<Irreducibility, AlgebraError> {
    if a.is_constant() {
        return Err(AlgebraError::ConstantInput);
    }
    if a.total_degree() == Some(1) {
        return Ok(Irreducibility::Irreducible);
    }
    let vars = a.vars_used();
    for &v in &vars {
        let (content, _) = content_and_primitive(a, v);
        if !content.is_constant() {
            return Ok(Irreducibility::Reducible);
        }
    }
    match a.field() {
        FieldSpec::Prime(p) => {
            if vars.len() == 1 {
                Ok(bool_verdict(rabin_irreducible(&to_dense(a, vars[0]), p)))
            } else {
                Ok(trial_division(a, &vars, budget))
            }
        }
        FieldSpec::Rationals => Ok(rational_verdict(a, &vars, budget)),
    }
}

fn bool_verdict(b: bool) -> Irreducibility {
    if b {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible
    }
}

/// Number of normalized (leading coefficient 1 under graded lex) nonconstant
/// polynomials over `F_p` in `nvars` variables of degree at most `max_degree`.
pub fn monic_count(p: u64, nvars: usize, max_degree: u32) -> u128 {
    let len = monomials_up_to(nvars, max_degree).len() as u32;
    (1..len).fold(0u128, |acc, i| acc.saturating_add((p as u128).saturating_pow(i)))
}

/// Visits every normalized nonconstant polynomial in the variables `vars`
/// (indices into an ambient ring of `nvars` variables) of degree at most
/// `max_degree`, ordered by leading monomial and then by lower coefficients.
pub fn for_each_monic<F>(field: FieldSpec, nvars: usize, vars: &[usize], max_degree: u32, mut f: F)
where
    F: FnMut(&MultiPoly) -> ControlFlow<()>,
{
    let elements = field.elements().expect("enumeration needs a prime field");
    let p = elements.len();
    let monos: Vec<Monomial> = monomials_up_to(vars.len(), max_degree)
        .into_iter()
        .map(|m| {
            let mut e = vec![0; nvars];
            for (k, &v) in vars.iter().enumerate() {
                e[v] = m.exponents()[k];
            }
            Monomial::new(e)
        })
        .collect();
    for lead in 1..monos.len() {
        let mut digits = vec![0usize; lead];
        loop {
            let terms = std::iter::once((monos[lead].clone(), field.one())).chain(
                digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .map(|(k, &d)| (monos[k].clone(), elements[d].clone())),
            );
            let cand = MultiPoly::from_terms(field, nvars, terms);
            if f(&cand).is_break() {
                return;
            }
            // little-endian counter over the lower coefficients
            let mut k = 0;
            while k < lead {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == lead {
                break;
            }
        }
    }
}

fn trial_division(a: &MultiPoly, vars: &[usize], budget: u128) -> Irreducibility {
    let p = a.field().characteristic();
    let half = a.total_degree().expect("nonzero") / 2;
    if monic_count(p, vars.len(), half) > budget {
        return Irreducibility::Unknown;
    }
    let mut found = false;
    for_each_monic(a.field(), a.nvars(), vars, half, |cand| {
        if a.is_divisible_by(cand) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    bool_verdict(!found)
}

fn rational_verdict(a: &MultiPoly, vars: &[usize], budget: u128) -> Irreducibility {
    let ints = integer_coefficients(a);
    if vars.len() == 1 {
        let dense = int_dense(&ints, a.nvars(), vars[0]);
        if dense[0].is_zero() {
            return Irreducibility::Reducible;
        }
        if let Some(has_root) = has_rational_root(&dense) {
            if has_root {
                return Irreducibility::Reducible;
            }
            if dense.len() <= 4 {
                return Irreducibility::Irreducible;
            }
        }
    }
    // A primitive integer polynomial whose reduction mod p keeps its total
    // degree and is irreducible over F_p is irreducible over Q.
    let degree = a.total_degree().expect("nonzero");
    for p in [2u64, 3, 5, 7, 11, 13] {
        let field = FieldSpec::Prime(p);
        let reduced = MultiPoly::from_terms(
            field,
            ints.nvars(),
            ints.terms().map(|(m, c)| (m.clone(), field.from_bigint(&integer_of(c)))),
        );
        if reduced.total_degree() != Some(degree) {
            continue;
        }
        if let Ok(Irreducibility::Irreducible) = is_irreducible_with_budget(&reduced, budget.min(1 << 12)) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unknown
}

fn integer_of(c: &Scalar) -> BigInt {
    c.as_rational().expect("rational coefficient").to_integer()
}

/// Scales a rational polynomial to a primitive integer polynomial.
fn integer_coefficients(a: &MultiPoly) -> MultiPoly {
    let mut lcm = BigInt::one();
    let mut g = BigInt::zero();
    for (_, c) in a.terms() {
        let r = c.as_rational().expect("rational coefficient");
        lcm = lcm.lcm(r.denom());
    }
    for (_, c) in a.terms() {
        let r = c.as_rational().expect("rational coefficient");
        g = g.gcd(&(r * BigRational::from_integer(lcm.clone())).to_integer());
    }
    let factor = BigRational::new(lcm, g);
    a.scale(&Scalar::Rational(factor))
}

fn int_dense(a: &MultiPoly, nvars: usize, var: usize) -> Vec<BigInt> {
    let _ = nvars;
    let deg = a.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in a.terms() {
        out[m.exponents()[var] as usize] = integer_of(c);
    }
    out
}

/// Rational root test; `None` when the coefficients are too large to enumerate divisors.
fn has_rational_root(coeffs: &[BigInt]) -> Option<bool> {
    let a0 = coeffs[0].abs().to_u64()?;
    let an = coeffs.last().expect("nonempty").abs().to_u64()?;
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return None;
    }
    let num_divs = divisors(a0);
    let den_divs = divisors(an);
    for r in &num_divs {
        for s in &den_divs {
            for sign in [1i64, -1] {
                let root = BigRational::new(BigInt::from(*r) * sign, BigInt::from(*s));
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &root + BigRational::from_integer(c.clone());
                }
                if acc.is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

// Dense univariate arithmetic over F_p; coefficient vectors are low degree first.

fn to_dense(a: &MultiPoly, var: usize) -> Vec<u64> {
    let deg = a.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in a.terms() {
        out[m.exponents()[var] as usize] = c.residue().expect("prime field coefficient");
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
}

fn is_zero_dense(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    Scalar::Residue { value: a, modulus: p }
        .inverse()
        .expect("nonzero")
        .residue()
        .expect("residue")
}

fn rem_dense(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm && !is_zero_dense(&r) {
        let dr = r.len() - 1;
        let q = (r[dr] as u128 * inv as u128 % p as u128) as u64;
        for (i, &mc) in m.iter().enumerate() {
            let idx = dr - dm + i;
            let sub = (q as u128 * mc as u128 % p as u128) as u64;
            r[idx] = (r[idx] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul_dense(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(&mut out);
    out
}

fn mulmod_dense(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem_dense(&mul_dense(a, b, p), m, p)
}

fn powmod_dense(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem_dense(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_dense(&acc, &b, m, p);
        }
        b = mulmod_dense(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd_dense(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_dense(&y) {
        let r = rem_dense(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn sub_dense(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible over `F_p` iff
/// `x^{p^n} = x mod f` and `gcd(x^{p^{n/q}} - x, f) = 1` for every prime `q | n`.
pub(crate) fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[k] = x^{p^k} mod f
    let mut frob = vec![rem_dense(&x, &f, p)];
    for _ in 0..n {
        let next = powmod_dense(frob.last().unwrap(), p, &f, p);
        frob.push(next);
    }
    if !is_zero_dense(&sub_dense(&frob[n], &rem_dense(&x, &f, p), p)) {
        return false;
    }
    for q in prime_factors(n as u64) {
        let k = n / q as usize;
        let g = gcd_dense(&sub_dense(&frob[k], &x, p), &f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
