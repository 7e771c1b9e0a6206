use mahler::measure::{boyd_lawton, quadrature, DEFAULT_SCHEDULE};
use mahler::surgery::{boyd_lift, specialize_q, surgered_polynomial};
use mahler::unipoly::cyclotomic;
use mahler::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(d: usize, max_terms: usize, exp: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-exp..=exp, d), -5i64..=5), 0..=max_terms)
        .prop_map(move |t| LaurentPoly::from_terms(d, t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero(d: usize, max_terms: usize, exp: i64) -> impl Strategy<Value = LaurentPoly> {
    poly(d, max_terms, exp).prop_filter("nonzero", |f| !f.is_zero())
}

fn unit(d: usize) -> impl Strategy<Value = (i8, Vec<i64>)> {
    (prop::bool::ANY, prop::collection::vec(-4i64..=4, d)).prop_map(|(s, e)| (if s { 1 } else { -1 }, e))
}

fn jensen(f: &LaurentPoly) -> MeasureEstimate {
    UniPoly::from_laurent(f).unwrap().mahler_jensen().unwrap()
}

proptest! {
    #[test]
    fn ring_laws(f in poly(2, 6, 3), g in poly(2, 6, 3), h in poly(2, 6, 3)) {
        let one = LaurentPoly::one(2);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &one, f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn normalize_is_a_canonical_form(f in poly(3, 6, 3), (sign, shift) in unit(3)) {
        let n = f.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(f.eq_up_to_unit(&n).unwrap());
        let moved = f.mul_unit(sign, &ExponentVector::new(shift));
        prop_assert_eq!(moved.normalize(), n.clone());
        if !n.is_zero() {
            prop_assert!(n.min_exponents().iter().all(|&e| e == 0));
            prop_assert!(*n.terms().next_back().unwrap().1 > BigInt::from(0));
        }
    }

    #[test]
    fn involution(f in poly(3, 6, 3), g in poly(3, 6, 3)) {
        prop_assert_eq!(f.involute().involute(), f.clone());
        prop_assert_eq!((&f * &g).involute(), &f.involute() * &g.involute());
    }

    #[test]
    fn display_round_trips(f in poly(3, 6, 4)) {
        prop_assert_eq!(parse_with_vars(&f.to_string(), 3).unwrap(), f);
    }

    #[test]
    fn exact_division_recovers_factor(f in poly(2, 5, 2), g in nonzero(2, 4, 2)) {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), Some(f));
    }

    #[test]
    fn derivative_is_a_derivation(f in poly(2, 5, 3), g in poly(2, 5, 3)) {
        let lhs = (&f * &g).partial_derivative(0);
        let rhs = &(&f.partial_derivative(0) * &g) + &(&f * &g.partial_derivative(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(f in poly(2, 5, 3), g in poly(2, 5, 3), r in prop::collection::vec(-4i64..=4, 2)) {
        let map = MonomialMap::specialization(&r);
        let a = (&f * &g).substitute(&map).unwrap();
        let b = &f.substitute(&map).unwrap() * &g.substitute(&map).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn univariate_measure_is_multiplicative(f in nonzero(1, 6, 6), g in nonzero(1, 6, 6)) {
        let (mf, mg, mfg) = (jensen(&f), jensen(&g), jensen(&(&f * &g)));
        let err = mfg.error_bound + mf.error_bound * mg.value + mg.error_bound * mf.value + 1e-9 * mfg.value;
        prop_assert!((mfg.value - mf.value * mg.value).abs() <= err,
            "{} * {}: {} vs {}", f, g, mfg, mf.value * mg.value);
    }

    #[test]
    fn univariate_measure_invariances(f in nonzero(1, 7, 6), (sign, shift) in unit(1)) {
        let m = jensen(&f);
        let bar = jensen(&f.involute());
        let moved = jensen(&f.mul_unit(sign, &ExponentVector::new(shift)));
        let neg = MonomialMap::from_images(1, vec![(-1, vec![1])]).unwrap();
        let flipped = jensen(&f.substitute(&neg).unwrap());
        for other in [bar, moved, flipped] {
            prop_assert!(m.agrees_with(&other, 1e-9), "{}: {} vs {}", f, m, other);
        }
        prop_assert!(m.value >= 1.0 - m.error_bound - 1e-12);
    }

    #[test]
    fn kronecker_products_measure_one(ms in prop::collection::vec(1u64..40, 1..4), shift in 0i64..5, neg in prop::bool::ANY) {
        let mut f = LaurentPoly::monomial(1, vec![shift], if neg { -1 } else { 1 });
        for m in ms {
            f = &f * &cyclotomic(m).to_laurent();
        }
        let p = UniPoly::from_laurent(&f).unwrap();
        prop_assert!(p.kronecker_test());
        prop_assert_eq!(p.mahler_jensen().unwrap().value, 1.0);
        prop_assert_eq!(p.classify().unwrap().tag, ClassTag::Kronecker);
    }

    #[test]
    fn salem_and_pv_roots_are_the_measure(c in prop::collection::vec(-2i64..=2, 2..7)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let p = UniPoly::from_i64(&coeffs);
        if let Ok(class) = p.classify() {
            if matches!(class.tag, ClassTag::Salem | ClassTag::Pv) {
                let m = p.mahler_jensen().unwrap();
                let root = class.dominant_root.unwrap();
                prop_assert!(root > 1.0);
                prop_assert!((m.value - root).abs() <= m.error_bound + 1e-9, "{}: {} vs {}", p, m, root);
            }
        }
    }

    #[test]
    fn quadrature_is_deterministic(f in nonzero(2, 4, 2), seed in 0u64..1000) {
        let a = quadrature(&f, 4096, seed).unwrap();
        let b = quadrature(&f, 4096, seed).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn surgery_division_preserves_measure(q in 1u64..60) {
        for key in ["7_1^2", "6_2^2", "encircled_pretzel"] {
            let l = catalog::get(key).unwrap().link.clone().unwrap();
            let a = mahler(&specialize_q(&l, q).unwrap()).unwrap();
            let b = mahler(&surgered_polynomial(&l, q).unwrap()).unwrap();
            prop_assert!(a.agrees_with(&b, 1e-9), "{} q={}: {} vs {}", key, q, a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn boyd_lift_preserves_measure(f in nonzero(1, 4, 4)) {
        let (g, _) = f.compress();
        prop_assume!(g.num_vars() == 1);
        let m = jensen(&g);
        let lifted = boyd_lawton(&boyd_lift(&g).unwrap(), &DEFAULT_SCHEDULE).unwrap();
        prop_assert!(m.agrees_with(&lifted, 1e-9), "{}: {} vs {}", g, m, lifted);
    }

    #[test]
    fn two_variable_measure_invariances(f in nonzero(2, 4, 2), (sign, shift) in unit(2)) {
        let (g, _) = f.compress();
        prop_assume!(g.num_vars() == 2);
        let m = mahler(&g).unwrap();
        let bar = mahler(&g.involute()).unwrap();
        let moved = mahler(&g.mul_unit(sign, &ExponentVector::new(shift))).unwrap();
        let map = MonomialMap::from_images(2, vec![(1, vec![2, 1]), (-1, vec![1, 1])]).unwrap();
        let changed = mahler(&g.substitute(&map).unwrap()).unwrap();
        for other in [bar, moved, changed] {
            prop_assert!(m.agrees_with(&other, 1e-9), "{}: {} vs {}", g, m, other);
        }
    }
}
