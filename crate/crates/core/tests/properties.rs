use coha_core::ffcount::{
    count_iso_classes, interpolate_poly, CountOptions, CountStrategy, FqField, FqMatrix,
};
use coha_core::gseries::{exp_plethystic, log_plethystic, rat, series_equal};
use coha_core::{AdamsMode, DimVector, GradedSeries, LaurentPoly, Quiver, Truncation};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..5).prop_map(|terms| {
        LaurentPoly::from_doubled_terms(terms.into_iter().map(|(e, c)| (2 * e, rat(c))))
    })
}

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..6)))
        .prop_map(|(n, arrows)| Quiver::from_indices(n, &arrows).unwrap())
}

fn dims(n: usize) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(0u32..=4, n).prop_map(DimVector::new)
}

fn quiver_with_dims() -> impl Strategy<Value = (Quiver, DimVector, DimVector, DimVector)> {
    quiver().prop_flat_map(|q| {
        let n = q.vertex_count();
        (Just(q), dims(n), dims(n), dims(n))
    })
}

fn series(trunc: Truncation, constant: i64) -> impl Strategy<Value = GradedSeries> {
    let len = trunc.degrees().len();
    prop::collection::vec(poly(), len).prop_map(move |coeffs| {
        GradedSeries::from_terms(
            trunc.clone(),
            trunc.degrees().into_iter().zip(coeffs).map(|(d, c)| {
                if d.is_zero() {
                    (d, LaurentPoly::from_int(constant))
                } else {
                    (d, c)
                }
            }),
        )
    })
}

fn two_box() -> Truncation {
    Truncation::new(DimVector::new(vec![2, 2]))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn adams_is_a_ring_homomorphism(a in poly(), b in poly(), k in 1u32..4, l in 1u32..4) {
        prop_assert_eq!((&a * &b).adams(k), &a.adams(k) * &b.adams(k));
        prop_assert_eq!((&a + &b).adams(k), &a.adams(k) + &b.adams(k));
        prop_assert_eq!(a.adams(k).adams(l), a.adams(k * l));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in 1i64..7) {
        let q = rat(x);
        prop_assert_eq!((&a * &b).evaluate(&q).unwrap(), a.evaluate(&q).unwrap() * b.evaluate(&q).unwrap());
    }

    #[test]
    fn exp_turns_sums_into_products(f in series(two_box(), 0), g in series(two_box(), 0)) {
        for mode in [AdamsMode::ZOnly, AdamsMode::QAndZ] {
            let lhs = exp_plethystic(&f.add(&g), mode).unwrap();
            let rhs = exp_plethystic(&f, mode).unwrap().mul(&exp_plethystic(&g, mode).unwrap());
            prop_assert!(series_equal(&lhs, &rhs));
        }
    }

    #[test]
    fn log_inverts_exp(f in series(Truncation::single(5), 0)) {
        for mode in [AdamsMode::ZOnly, AdamsMode::QAndZ] {
            let back = log_plethystic(&exp_plethystic(&f, mode).unwrap(), mode).unwrap();
            prop_assert!(series_equal(&back, &f));
        }
    }

    #[test]
    fn series_inverse(f in series(two_box(), 1)) {
        let inv = f.inverse().unwrap();
        prop_assert!(series_equal(&f.mul(&inv), &GradedSeries::one(two_box())));
    }

    #[test]
    fn euler_form_is_bilinear((q, a, b, c) in quiver_with_dims()) {
        let ab = &a + &b;
        prop_assert_eq!(q.euler_form(&ab, &c).unwrap(), q.euler_form(&a, &c).unwrap() + q.euler_form(&b, &c).unwrap());
        prop_assert_eq!(q.euler_form(&c, &ab).unwrap(), q.euler_form(&c, &a).unwrap() + q.euler_form(&c, &b).unwrap());
        prop_assert_eq!(q.sym_euler_form(&a, &b).unwrap(), q.sym_euler_form(&b, &a).unwrap());
        prop_assert_eq!(q.p(&a), 2 - q.sym_euler_form(&a, &a).unwrap());
    }

    #[test]
    fn rhom_and_shift_identities((q, a, b, _c) in quiver_with_dims()) {
        let ranks = q.rhom_vrank(&a, &b).unwrap();
        prop_assert_eq!(-ranks.vrank, q.sym_euler_form(&a, &b).unwrap());
        prop_assert!(q.shift_identity_check(&a, &b).unwrap());
    }

    #[test]
    fn canonical_hash_survives_json((q, _a, _b, _c) in quiver_with_dims()) {
        let back = Quiver::from_json(&q.to_json()).unwrap();
        prop_assert_eq!(back.canonical_hash(), q.canonical_hash());
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(-20i64..=20, 1..6)) {
        let p = LaurentPoly::from_coeffs(&coeffs);
        let fields = [2u64, 3, 4, 5, 7, 8, 9, 11];
        let samples: Vec<(u64, BigInt)> = fields
            .iter()
            .map(|&q| (q, p.evaluate_int(q).unwrap().to_integer()))
            .collect();
        prop_assert_eq!(interpolate_poly(&samples, coeffs.len() - 1).unwrap(), p);
    }

    #[test]
    fn rank_is_submultiplicative(a in prop::collection::vec(0u8..4, 12), b in prop::collection::vec(0u8..4, 12)) {
        let field = FqField::new(4).unwrap();
        let x = FqMatrix::from_vec(3, 4, a);
        let y = FqMatrix::from_vec(4, 3, b);
        let xy = x.mul(&field, &y).rank(&field);
        prop_assert!(xy <= x.rank(&field).min(y.rank(&field)));
        prop_assert_eq!(x.rank(&field) + x.kernel_dim(&field), 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn counting_strategies_agree(
        loops in prop::collection::vec(0usize..=2, 2),
        between in 0usize..=2,
        d in prop::collection::vec(0u32..=2, 2),
        q in prop::sample::select(vec![2u64, 3]),
    ) {
        let mut arrows = Vec::new();
        for (v, &l) in loops.iter().enumerate() {
            arrows.extend(std::iter::repeat_n((v, v), l));
        }
        arrows.extend(std::iter::repeat_n((0, 1), between));
        let quiver = Quiver::from_indices(2, &arrows).unwrap();
        let d = DimVector::new(d);
        let types = count_iso_classes(&quiver, &d, q, CountOptions::with_strategy(CountStrategy::TypeBased)).unwrap();
        let classes = count_iso_classes(&quiver, &d, q, CountOptions::with_strategy(CountStrategy::ClassBased)).unwrap();
        prop_assert_eq!(types, classes);
    }
}
