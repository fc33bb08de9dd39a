//! Multivariate gcd over a field by recursive content / primitive-part reduction.
//!
//! A polynomial is viewed as univariate in its highest-index variable with
//! coefficients in the remaining variables; contents are handled recursively
//! and primitive parts by a monic-normalized primitive remainder sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::is_prime;
use super::{AlgebraError, FieldSpec, Monomial, MultiPoly};

/// Number of word-sized primes tried by the modular algorithm before falling
/// back to remainder sequences over `Q`.
const MODULAR_PRIMES: usize = 48;

/// Monic gcd of `a` and `b`. `gcd(f, 0)` is `f` made monic.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    a.compatible(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    if a.field() == FieldSpec::Rationals && !a.is_zero() && !b.is_zero() && !a.is_constant() && !b.is_constant() {
        if let Some(g) = modular_gcd(a, b) {
            return Ok(g);
        }
    }
    Ok(gcd_inner(a, b).monic())
}

/// Monic gcd over `Q` from monic images modulo word-sized primes, combined by
/// CRT and rational reconstruction, and confirmed by trial division. Images
/// whose leading monomial exceeds the smallest one seen are discarded as
/// unlucky. `None` if no stable candidate appears within the prime budget.
fn modular_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (a, b) = (scalar_primitive(a), scalar_primitive(b));
    let lc = |p: &MultiPoly| p.leading_coeff().and_then(|c| c.as_rational()).map(|r| r.numer().clone());
    let (lca, lcb) = (lc(&a)?, lc(&b)?);
    let mut best: Option<(Monomial, BTreeMap<Monomial, BigInt>, BigInt)> = None;
    let mut previous: Option<MultiPoly> = None;
    let mut tried = 0;
    let mut p: u64 = (1 << 31) - 1;
    while tried < MODULAR_PRIMES && p > 2 {
        let prime = p;
        p -= 2;
        if !is_prime(prime) {
            continue;
        }
        let big_p = BigInt::from(prime);
        if lca.is_multiple_of(&big_p) || lcb.is_multiple_of(&big_p) {
            continue;
        }
        tried += 1;
        let field = FieldSpec::Prime(prime);
        let reduce = |f: &MultiPoly| f.map_coeffs(field, |c| field.from_rational(c.as_rational().expect("rational")).expect("integer"));
        let image = gcd_inner(&reduce(&a), &reduce(&b)).monic();
        if image.is_constant() {
            return Some(MultiPoly::one(a.field(), a.nvars()));
        }
        let lm = image.leading_term().map(|(m, _)| m.clone()).expect("nonzero image");
        let residues = image.terms().map(|(m, c)| (m.clone(), BigInt::from(c.residue().expect("residue"))));
        match &mut best {
            Some((best_lm, _, _)) if lm > *best_lm => continue,
            Some((best_lm, acc, modulus)) if lm == *best_lm => {
                let fresh: BTreeMap<Monomial, BigInt> = residues.collect();
                let keys: Vec<Monomial> = acc.keys().chain(fresh.keys()).cloned().collect();
                for m in keys {
                    let r1 = acc.get(&m).cloned().unwrap_or_default();
                    let r2 = fresh.get(&m).cloned().unwrap_or_default();
                    acc.insert(m, crt(&r1, modulus, &r2, prime));
                }
                *modulus *= &big_p;
            }
            _ => {
                best = Some((lm, residues.collect(), big_p));
                previous = None;
                continue;
            }
        }
        let (_, acc, modulus) = best.as_ref().expect("set above");
        let mut terms = Vec::with_capacity(acc.len());
        let mut ok = true;
        for (m, r) in acc {
            match rational_reconstruction(r, modulus) {
                Some(q) => terms.push((m.clone(), FieldSpec::Rationals.from_rational(&q).expect("nonzero denominator"))),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            previous = None;
            continue;
        }
        let candidate = MultiPoly::from_terms(FieldSpec::Rationals, a.nvars(), terms);
        if previous.as_ref() == Some(&candidate) && a.is_divisible_by(&candidate) && b.is_divisible_by(&candidate) {
            return Some(candidate);
        }
        previous = Some(candidate);
    }
    None
}

/// The `x` with `x ≡ r1 (mod m)` and `x ≡ r2 (mod p)`, reduced modulo `m p`.
fn crt(r1: &BigInt, m: &BigInt, r2: &BigInt, p: u64) -> BigInt {
    let big_p = BigInt::from(p);
    let m_mod = m.mod_floor(&big_p).to_u64().expect("residue fits");
    let inv = FieldSpec::Prime(p).from_i64(m_mod as i64).inverse().expect("coprime moduli").residue().expect("residue");
    let diff = (r2 - r1).mod_floor(&big_p);
    let t = (diff * BigInt::from(inv)).mod_floor(&big_p);
    (r1 + m * t).mod_floor(&(m * &big_p))
}

/// The fraction `n/d` with `|n|, d <= sqrt(m/2)` congruent to `r` modulo `m`, if any.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let one = MultiPoly::one(a.field(), a.nvars());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    if a == b {
        return a.monic();
    }
    let var = a
        .vars_used()
        .into_iter()
        .chain(b.vars_used())
        .max()
        .expect("nonconstant polynomial uses a variable");
    let (ca, pa) = content_and_primitive(a, var);
    let (cb, pb) = content_and_primitive(b, var);
    let content = gcd_inner(&ca, &cb);
    let prim = primitive_gcd(pa, pb, var);
    (&content * &prim).monic()
}

fn degree_in(p: &MultiPoly, var: usize) -> u32 {
    p.degree_in(var).unwrap_or(0)
}

/// Splits `p` into its content with respect to `var` (a polynomial not
/// involving `var`, monic) and the primitive part.
pub(crate) fn content_and_primitive(p: &MultiPoly, var: usize) -> (MultiPoly, MultiPoly) {
    let mut content = MultiPoly::zero(p.field(), p.nvars());
    for c in p.coeffs_in(var).iter().rev() {
        if c.is_zero() {
            continue;
        }
        content = gcd_inner(&content, c);
        if content.is_constant() {
            break;
        }
    }
    let content = content.monic();
    let prim = p.exact_div(&content).expect("content divides every coefficient");
    (content, prim)
}

/// Over `Q`, rescales to coprime integer coefficients with a positive leading
/// coefficient, which keeps remainder sequences from growing fractions.
/// Over `F_p` the polynomial is made monic.
pub(crate) fn scalar_primitive(p: &MultiPoly) -> MultiPoly {
    if p.field() != FieldSpec::Rationals || p.is_zero() {
        return p.monic();
    }
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficient");
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    let mut factor = BigRational::new(den, num);
    if p.leading_coeff().and_then(|c| c.as_rational()).is_some_and(|c| c.is_negative()) {
        factor = -factor;
    }
    if factor.is_one() {
        return p.clone();
    }
    let s = FieldSpec::Rationals.from_rational(&factor).expect("nonzero content");
    p.scale(&s)
}

fn leading_coeff_in(p: &MultiPoly, var: usize) -> MultiPoly {
    p.coeffs_in(var).pop().expect("nonzero polynomial")
}

/// Pseudo-remainder of `a` by `b` viewed as univariate in `var`.
pub(crate) fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = degree_in(b, var);
    let lcb = leading_coeff_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, var) >= db {
        let dr = degree_in(&r, var);
        let lcr = leading_coeff_in(&r, var);
        let shift = MultiPoly::var(a.field(), a.nvars(), var).pow(dr - db);
        let mut next = &lcb * &r;
        next -= &(&(&lcr * &shift) * b);
        r = scalar_primitive(&next);
    }
    r
}

fn primitive_gcd(a: MultiPoly, b: MultiPoly, var: usize) -> MultiPoly {
    let (a, b) = (scalar_primitive(&a), scalar_primitive(&b));
    let (mut r0, mut r1) = if degree_in(&a, var) >= degree_in(&b, var) { (a, b) } else { (b, a) };
    loop {
        if degree_in(&r1, var) == 0 {
            return MultiPoly::one(r0.field(), r0.nvars());
        }
        let r = pseudo_rem(&r0, &r1, var);
        if r.is_zero() {
            return r1.monic();
        }
        let (_, prim) = content_and_primitive(&r, var);
        r0 = r1;
        r1 = scalar_primitive(&prim);
    }
}
