use std::collections::HashSet;

use darboux_core::algebra::{FieldSpec, Monomial, MultiPoly};
use darboux_core::darboux::form_invariant;
use darboux_core::exterior::{vf_invariant, PolyForm, VectorField};
use darboux_core::sample;
use darboux_core::search::{enumerate_invariants, search_invariants, SearchBudget};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every polynomial `c0 + c1 x + c2 y` of degree exactly 1 (all are irreducible
/// with nonzero differential) that is invariant under the dual field
/// `X = (-b, a)` of `ω = a dx + b dy`, rescaled to leading coefficient 1.
fn oracle(omega: &PolyForm, p: u64) -> HashSet<MultiPoly> {
    let field = FieldSpec::Prime(p);
    let a = omega.component(0);
    let b = omega.component(1);
    let x = VectorField::polynomial(field, vec![-&b, a]).unwrap();
    let mut out = HashSet::new();
    for c0 in 0..p {
        for c1 in 0..p {
            for c2 in 0..p {
                if c1 == 0 && c2 == 0 {
                    continue;
                }
                let terms = [(vec![0, 0], c0), (vec![1, 0], c1), (vec![0, 1], c2)]
                    .into_iter()
                    .map(|(e, c)| (Monomial::new(e), field.from_i64(c as i64)));
                let f = MultiPoly::from_terms(field, 2, terms);
                if vf_invariant(&x, &f).unwrap() {
                    out.insert(f.monic());
                }
            }
        }
    }
    out
}

#[test]
fn degree_one_search_matches_oracle() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    for p in [2u64, 3] {
        let field = FieldSpec::Prime(p);
        for _ in 0..20 {
            let omega = sample::nonzero_one_form(&mut r, field, 2, 2);
            let found = enumerate_invariants(&omega, &SearchBudget::new(field, 1)).unwrap();
            let set: HashSet<MultiPoly> = found.iter().cloned().collect();
            assert_eq!(set.len(), found.len(), "duplicates for {omega}");
            assert_eq!(set, oracle(&omega, p), "{omega} over F_{p}");
            for f in &found {
                assert!(form_invariant(&omega, f).unwrap().verified);
            }
        }
    }
}

#[test]
fn search_is_deterministic() {
    let mut r = ChaCha8Rng::seed_from_u64(10);
    for p in [2u64, 3] {
        let field = FieldSpec::Prime(p);
        for _ in 0..5 {
            let omega = sample::nonzero_one_form(&mut r, field, 2, 1);
            let budget = SearchBudget::new(field, 2);
            let first = search_invariants(&omega, &budget).unwrap();
            assert_eq!(first, search_invariants(&omega, &budget).unwrap());
            assert!(first.invariants.iter().all(|f| f.leading_coeff().unwrap().is_one()));
        }
    }
}
