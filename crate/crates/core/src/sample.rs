//! Random generators for property tests and fuzzing.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{monomials_up_to, FieldSpec, MultiPoly, RatFunc, Scalar};
use crate::exterior::PolyForm;

/// A scalar; over `Q` a small integer or, one time in four, a small fraction.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => {
            let num = BigInt::from(rng.gen_range(-5i64..=5));
            let den = if rng.gen_ratio(1, 4) { rng.gen_range(2i64..=4) } else { 1 };
            field.from_rational(&BigRational::new(num, BigInt::from(den))).expect("nonzero denominator")
        }
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Each monomial of degree at most `max_degree` is present with probability `density`.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, max_degree: u32, density: f64) -> MultiPoly {
    let mut terms = Vec::new();
    for m in monomials_up_to(nvars, max_degree) {
        if rng.gen_bool(density) {
            terms.push((m, nonzero_scalar(rng, field)));
        }
    }
    MultiPoly::from_terms(field, nvars, terms)
}

pub fn nonzero_poly<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, max_degree: u32) -> MultiPoly {
    loop {
        let p = poly(rng, field, nvars, max_degree, 0.5);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn nonconstant_poly<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, max_degree: u32) -> MultiPoly {
    assert!(max_degree >= 1);
    loop {
        let p = poly(rng, field, nvars, max_degree, 0.5);
        if !p.is_constant() {
            return p;
        }
    }
}

pub fn ratfunc<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, max_degree: u32) -> RatFunc {
    let num = poly(rng, field, nvars, max_degree, 0.5);
    let den = nonzero_poly(rng, field, nvars, max_degree);
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// A polynomial form of the given grade with coefficients of degree at most `max_degree`.
pub fn form<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, grade: usize, max_degree: u32) -> PolyForm {
    let mut terms = Vec::new();
    let mut idx: Vec<usize> = (0..grade).collect();
    if grade <= nvars {
        loop {
            terms.push((idx.clone(), poly(rng, field, nvars, max_degree, 0.5)));
            // next increasing tuple
            let mut k = grade;
            while k > 0 && idx[k - 1] == nvars - grade + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..grade {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    PolyForm::from_terms(field, nvars, grade, terms).expect("increasing tuples")
}

pub fn nonzero_one_form<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, nvars: usize, max_degree: u32) -> PolyForm {
    loop {
        let w = form(rng, field, nvars, 1, max_degree);
        if !w.is_zero() {
            return w;
        }
    }
}
