use darboux_core::algebra::FieldSpec;
use darboux_core::linalg::{ff_kernel, verify_kernel, PolyMatrix};
use darboux_core::sample;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldSpec; 3] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)];

fn random_matrix(r: &mut ChaCha8Rng, field: FieldSpec) -> PolyMatrix {
    let rows = r.gen_range(1..=8);
    let cols = r.gen_range(1..=8);
    // char 0 matrices carry scalar entries, prime-field ones entries in F_p[y1, y2]
    let (nvars, deg) = if field.characteristic() == 0 { (2, 0) } else { (2, 2) };
    // low density keeps some rank deficiency in the corpus
    let density = if r.gen_bool(0.5) { 0.2 } else { 0.5 };
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| sample::poly(r, field, nvars, deg, density)).collect())
        .collect();
    PolyMatrix::from_rows(field, nvars, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kernel_vectors_verify_and_rank_nullity_holds(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for field in FIELDS {
            let m = random_matrix(&mut r, field);
            let kernel = ff_kernel(&m);
            for v in &kernel {
                prop_assert!(v.iter().any(|e| !e.is_zero()));
                prop_assert!(verify_kernel(&m, v).unwrap());
                let lead = v.iter().find(|e| !e.is_zero()).unwrap();
                prop_assert!(lead.leading_coeff().unwrap().is_one() || field.characteristic() == 0);
            }
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        }
    }

    #[test]
    fn reduction_stays_polynomial(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for field in FIELDS {
            let m = random_matrix(&mut r, field);
            let red = m.reduce().unwrap();
            // pivot columns are unit columns scaled by the common pivot
            for (k, &c) in red.pivot_cols.iter().enumerate() {
                for i in 0..red.matrix.rows() {
                    let e = red.matrix.get(i, c);
                    if i == k {
                        prop_assert_eq!(e, &red.pivot);
                    } else {
                        prop_assert!(e.is_zero());
                    }
                }
            }
            for i in red.rank()..red.matrix.rows() {
                prop_assert!(red.matrix.row(i).iter().all(|e| e.is_zero()));
            }
        }
    }
}
