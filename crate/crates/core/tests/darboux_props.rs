use darboux_core::algebra::{is_irreducible, FieldSpec, Irreducibility, MultiPoly};
use darboux_core::darboux::{
    build_logform, cofactor, cofactor_dependence, first_integral_check, form_invariant, multiplicative_integral,
    rational_first_integral, tangency_check, DarbouxError, SubsetStrategy,
};
use darboux_core::dconst::DConstant;
use darboux_core::exterior::{PolyForm, RatForm};
use darboux_core::sample;
use darboux_core::search::{enumerate_invariants, SearchBudget};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldSpec; 4] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];

/// `ω = F α + g dF`, which makes `F` invariant with cofactor `α ∧ dF`.
fn invariant_instance(r: &mut ChaCha8Rng, field: FieldSpec) -> Option<(PolyForm, MultiPoly)> {
    let f = sample::nonconstant_poly(r, field, 2, 2);
    let df = PolyForm::exact(&f);
    if df.is_zero() {
        return None;
    }
    let alpha = sample::form(r, field, 2, 1, 1);
    let g = sample::poly(r, field, 2, 1, 0.5);
    let omega = alpha.mul_fn(&f).add(&df.mul_fn(&g)).unwrap();
    Some((omega, f))
}

/// Embeds `λ_i` and sums `λ_i Θ_i` as a rational 2-form.
fn weighted_sum(lambda: &[DConstant], forms: &[PolyForm]) -> RatForm {
    let mut acc = RatForm::zero(forms[0].field(), forms[0].nvars(), 2);
    for (l, t) in lambda.iter().zip(forms) {
        acc = acc.add(&t.to_rat().mul_fn(&l.embed())).unwrap();
    }
    acc
}

fn random_dconstant(r: &mut ChaCha8Rng, field: FieldSpec, nvars: usize) -> DConstant {
    if field.characteristic() == 0 {
        DConstant::scalar(field, nvars, sample::scalar(r, field))
    } else {
        // surrogate degree 1 is z-degree p
        DConstant::from_surrogate_poly(sample::poly(r, field, nvars, 1, 0.5)).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cofactor_round_trip(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for field in FIELDS {
            let Some((omega, f)) = invariant_instance(&mut r, field) else { continue };
            let cert = form_invariant(&omega, &f).unwrap();
            prop_assert!(cert.verified && cert.recheck());
            let theta = cofactor(&omega, &f).unwrap();
            let lhs = theta.form.mul_fn(&f);
            prop_assert_eq!(lhs, omega.wedge(&PolyForm::exact(&f)).unwrap());
            if let (Some(dt), Some(dw)) = (theta.form.degree(), omega.degree()) {
                prop_assert!(dt < dw);
            }
        }
    }

    #[test]
    fn dependence_vectors_expand_to_zero(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for field in FIELDS {
            let Some((omega, f)) = invariant_instance(&mut r, field) else { continue };
            // a second and third invariant of the same form
            let mut fs = vec![f.clone()];
            for g in [&f + &MultiPoly::one(field, 2), f.pow(2)] {
                if form_invariant(&omega, &g).is_ok_and(|c| c.verified) {
                    fs.push(g);
                }
            }
            let cofs: Vec<_> = fs.iter().map(|g| cofactor(&omega, g).unwrap()).collect();
            let forms: Vec<PolyForm> = cofs.iter().map(|c| c.form.clone()).collect();
            for v in cofactor_dependence(&cofs).unwrap() {
                prop_assert!(v.iter().any(|l| !l.is_zero()));
                prop_assert!(weighted_sum(&v, &forms).is_zero());
            }
        }
    }

    #[test]
    fn logarithmic_forms_are_closed(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for field in FIELDS {
            let k = r.gen_range(1..=3);
            let fs: Vec<MultiPoly> = (0..k).map(|_| sample::nonconstant_poly(&mut r, field, 2, 2)).collect();
            let lambda: Vec<DConstant> = (0..k).map(|_| random_dconstant(&mut r, field, 2)).collect();
            match build_logform(&lambda, &fs) {
                Ok(eta) => {
                    prop_assert!(eta.is_closed());
                    if field.characteristic() != 5 && k < 3 {
                        prop_assert!(eta.expansion().d().is_zero());
                    }
                }
                Err(DarbouxError::ZeroVector) | Err(DarbouxError::ExpandedToZero) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}

/// Distinct monic irreducibles of degree at most 2 with nonzero differential.
fn distinct_irreducibles(r: &mut ChaCha8Rng, field: FieldSpec, nvars: usize, k: usize) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    while out.len() < k {
        let deg = if nvars == 1 { 1 } else { r.gen_range(1..=2) };
        let f = sample::nonconstant_poly(r, field, nvars, deg).monic();
        if PolyForm::exact(&f).is_zero() || out.contains(&f) {
            continue;
        }
        if is_irreducible(&f) == Ok(Irreducibility::Irreducible) {
            out.push(f);
        }
    }
    out
}

#[test]
fn logarithmic_map_is_injective() {
    let mut r = ChaCha8Rng::seed_from_u64(0x10_6f_04);
    let primes = [2u64, 3, 5];
    for case in 0..200 {
        let field = FieldSpec::Prime(primes[case % 3]);
        let nvars = 1 + case % 2;
        // univariate degree-1 monics: p of them
        let max_k = if nvars == 1 { 4.min(primes[case % 3] as usize) } else { 4 };
        let k = r.gen_range(1..=max_k);
        let fs = distinct_irreducibles(&mut r, field, nvars, k);
        let lambda = loop {
            let l: Vec<DConstant> = (0..k).map(|_| random_dconstant(&mut r, field, nvars)).collect();
            if l.iter().any(|c| !c.is_zero()) {
                break l;
            }
        };
        let eta = build_logform(&lambda, &fs).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(!eta.cleared().0.is_zero(), "case {case}");
    }
}

/// A random form, or every other time `a F2 dF1 + b F1 dF2` for random degree-1
/// `F1`, `F2`, which has both as invariants.
fn fuzz_form(r: &mut ChaCha8Rng, field: FieldSpec, case: usize) -> PolyForm {
    if case.is_multiple_of(2) {
        return sample::nonzero_one_form(r, field, 2, 2);
    }
    loop {
        let f1 = sample::nonconstant_poly(r, field, 2, 1);
        let f2 = sample::nonconstant_poly(r, field, 2, 1);
        let a = sample::nonzero_scalar(r, field);
        let b = sample::nonzero_scalar(r, field);
        let w = PolyForm::exact(&f1)
            .mul_fn(&f2.scale(&a))
            .add(&PolyForm::exact(&f2).mul_fn(&f1.scale(&b)))
            .unwrap();
        if !w.is_zero() {
            return w;
        }
    }
}

fn check_integrals(omega: &PolyForm, fs: &[MultiPoly]) -> Result<(), TestCaseError> {
    if let Ok(res) = multiplicative_integral(omega, fs) {
        prop_assert!(res.certificate.verified && res.certificate.recheck());
        prop_assert!(tangency_check(omega, &res.logform).verified);
        if let Some(g) = res.integral.as_ratfunc() {
            if !RatForm::exact(&g).is_zero() {
                prop_assert!(first_integral_check(omega, &g).verified);
            }
        }
    }
    if fs.len() >= 2 {
        if let Ok(res) = rational_first_integral(omega, fs, SubsetStrategy::Exhaustive) {
            prop_assert!(res.certificate.verified && res.certificate.recheck());
            prop_assert!(first_integral_check(omega, &res.function).verified);
            prop_assert!(tangency_check(omega, &res.eta1).verified);
            prop_assert!(tangency_check(omega, &res.eta2).verified);
            prop_assert_eq!(res.eta1.expansion(), res.eta2.expansion().mul_fn(&res.function));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn returned_integrals_pass_the_check(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for (case, p) in [2u64, 3, 2, 3].into_iter().enumerate() {
            let field = FieldSpec::Prime(p);
            let omega = fuzz_form(&mut r, field, case);
            let mut fs = enumerate_invariants(&omega, &SearchBudget::new(field, 1)).unwrap();
            fs.shuffle(&mut r);
            fs.truncate(4);
            check_integrals(&omega, &fs)?;
        }
        // over Q: an exact form with known invariants
        let q = FieldSpec::Rationals;
        let (x, y) = (MultiPoly::var(q, 2, 0), MultiPoly::var(q, 2, 1));
        let a = sample::nonzero_scalar(&mut r, q);
        let b = sample::nonzero_scalar(&mut r, q);
        let omega = PolyForm::one_form(q, vec![y.scale(&a), x.scale(&b)]);
        check_integrals(&omega, &[x.clone(), y.clone(), &x + &y])?;
    }
}

#[test]
fn fuzzed_pipeline_reaches_integrals() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    let (mut mult, mut rat) = (0, 0);
    for case in 0..60 {
        let field = FieldSpec::Prime([2, 3][case % 2]);
        let omega = fuzz_form(&mut r, field, case / 2);
        let mut fs = enumerate_invariants(&omega, &SearchBudget::new(field, 1)).unwrap();
        fs.shuffle(&mut r);
        fs.truncate(4);
        check_integrals(&omega, &fs).unwrap();
        mult += multiplicative_integral(&omega, &fs).is_ok() as usize;
        rat += (fs.len() >= 2 && rational_first_integral(&omega, &fs, SubsetStrategy::Exhaustive).is_ok()) as usize;
    }
    eprintln!("multiplicative {mult}, rational {rat}");
    assert!(mult > 0 && rat > 0);
}
