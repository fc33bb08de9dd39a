use std::collections::BTreeSet;

use darboux_core::algebra::{monomials_up_to, FieldSpec, MultiPoly};
use darboux_core::dconst::{dim_forms_exact, forms_matrix, nk_paper, p_decompose, DConstant};
use darboux_core::exterior::{PolyForm, RatForm};
use darboux_core::sample;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 3] = [2, 3, 5];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_round_trip(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for p in PRIMES {
            let f = FieldSpec::Prime(p);
            let a = sample::poly(&mut r, f, 3, 7, 0.2);
            let dec = p_decompose(&a);
            prop_assert_eq!(dec.recompose(), a);
            prop_assert!(dec.parts().keys().all(|b| b.iter().all(|&e| (e as u64) < p)));
        }
    }

    #[test]
    fn embedded_constants_are_closed(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for p in PRIMES {
            let f = FieldSpec::Prime(p);
            let value = sample::ratfunc(&mut r, f, 2, 2);
            let c = DConstant::from_surrogate(value.clone()).unwrap();
            let e = c.embed();
            prop_assert!(RatForm::exact(&e).is_zero());
            let back = DConstant::from_function(&e).unwrap();
            prop_assert_eq!(back.surrogate(), &value);
        }
        let q = FieldSpec::Rationals;
        let c = DConstant::scalar(q, 2, sample::scalar(&mut r, q));
        prop_assert!(RatForm::exact(&c.embed()).is_zero());
    }
}

/// Every monomial 2-form `z^a dz_i ∧ dz_j` with `|a| <= d`.
fn monomial_two_forms(field: FieldSpec, n: usize, d: u32) -> Vec<PolyForm> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in monomials_up_to(n, d) {
                let c = MultiPoly::term(field, m, field.one());
                out.push(PolyForm::from_terms(field, n, 2, vec![(vec![i, j], c)]).unwrap());
            }
        }
    }
    out
}

#[test]
fn exact_dimension_matches_brute_force_rank() {
    for p in [2u64, 3] {
        let field = FieldSpec::Prime(p);
        for n in 2..=3usize {
            for d in 0..=4u32 {
                let forms = monomial_two_forms(field, n, d);
                let fm = forms_matrix(&forms).unwrap();
                let expected = dim_forms_exact(n as i64, d as i64, 2, field).unwrap();
                assert_eq!(fm.matrix.rank() as u128, expected, "p={p} n={n} d={d}");
                // each column has one entry, so the rank is the number of distinct (pair, class) labels
                let classes: BTreeSet<(usize, usize, Vec<u32>)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .flat_map(|(i, j)| {
                        monomials_up_to(n, d)
                            .into_iter()
                            .map(move |m| (i, j, m.exponents().iter().map(|e| e % p as u32).collect()))
                    })
                    .collect();
                assert_eq!(classes.len() as u128, expected);
            }
        }
    }
}

#[test]
fn nk_count_agrees_in_characteristic_zero() {
    let q = FieldSpec::Rationals;
    for n in 1..=4i64 {
        for d in 0..=5 {
            for r in 0..=n {
                assert_eq!(nk_paper(n, d, r, q).unwrap(), dim_forms_exact(n, d, r, q).unwrap());
            }
        }
    }
}

#[test]
fn nk_count_undercounts_in_small_characteristic() {
    let f2 = FieldSpec::Prime(2);
    assert_eq!(nk_paper(2, 3, 2, f2).unwrap(), 3);
    assert_eq!(dim_forms_exact(2, 3, 2, f2).unwrap(), 4);
    assert_eq!(nk_paper(2, 2, 2, f2).unwrap(), 3);
    assert_eq!(dim_forms_exact(2, 2, 2, f2).unwrap(), 4);
    // agreement below the threshold
    assert_eq!(nk_paper(2, 1, 2, f2).unwrap(), dim_forms_exact(2, 1, 2, f2).unwrap());
}
