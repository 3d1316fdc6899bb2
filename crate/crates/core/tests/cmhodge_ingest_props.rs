mod common;

use common::{brute_force_trace, is_prime, FiniteField};
use frobsys::cmhodge::{
    cm_type_hodge, find_compatible_cm_type, half_twist, half_twist_ladder, CMField, CMType, EHodgeType,
};
use frobsys::ingest::{count_points, extension_trace, least_nonresidue, legendre, EllipticCurve};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A Hodge-symmetric rank-one type on the standard CM field of genus `g`.
fn symmetric_type() -> impl Strategy<Value = EHodgeType> {
    (1usize..=5, 0i64..=9).prop_flat_map(|(g, w)| {
        prop::collection::vec(0..=w, g).prop_map(move |ps| {
            let field = CMField::standard(g).unwrap();
            let mut slots = vec![(0, 0); 2 * g];
            for ((s, t), p) in field.pairs().into_iter().zip(ps) {
                slots[s] = (p, w - p);
                slots[t] = (w - p, p);
            }
            EHodgeType::new(&field, slots).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn half_twist_raises_weight_and_lowers_level(v in symmetric_type()) {
        prop_assume!(v.level() >= 1);
        let phi = find_compatible_cm_type(&v).expect("symmetric types admit a CM type");
        let w = half_twist(&v, &phi).unwrap();
        prop_assert_eq!(w.weight(), v.weight() + 1);
        prop_assert_eq!(w.level(), v.level() - 1);
        prop_assert!(w.is_hodge_symmetric());
        let h = cm_type_hodge(&phi);
        prop_assert_eq!(h.weight(), 1);
        prop_assert!(h.strict_upper_set().is_disjoint(&v.strict_upper_set()));
    }

    #[test]
    fn ladder_length_is_the_level(v in symmetric_type()) {
        let steps = half_twist_ladder(&v).unwrap();
        prop_assert_eq!(steps.len() as i64, v.level());
        if let Some((_, last)) = steps.last() {
            prop_assert_eq!(last.level(), 0);
            prop_assert_eq!(last.weight(), v.weight() + v.level());
        }
    }

    #[test]
    fn counted_traces_obey_the_weil_bound(a in -20i64..=20, b in -20i64..=20, i in 0usize..40) {
        let p = (5..400).filter(|&p| is_prime(p)).nth(i).unwrap();
        let Ok(curve) = EllipticCurve::new(a, b, p) else {
            return Err(TestCaseError::reject("singular mod p"));
        };
        let ap = count_points(&curve).unwrap();
        prop_assert!(ap * ap <= 4 * p as i64);
        prop_assert_eq!(ap, brute_force_trace(&FiniteField::new(p, 1), a, b));
        let d = least_nonresidue(p);
        prop_assert_eq!(legendre(d as i64, p), -1);
        prop_assert_eq!(count_points(&curve.twist(d as i64).unwrap()).unwrap(), -ap);
    }
}

#[test]
fn cm_type_counts_are_powers_of_two() {
    for g in 1..=5 {
        let field = CMField::standard(g).unwrap();
        let types = field.cm_types();
        assert_eq!(types.len(), 1 << g);
        for phi in &types {
            for (s, t) in field.pairs() {
                assert!(phi.contains(s) != phi.contains(t));
            }
        }
    }
    let field = CMField::standard(2).unwrap();
    assert!(CMType::new(&field, [0, 2]).is_err());
    assert!(CMType::new(&field, [0]).is_err());
}

#[test]
fn extension_traces_match_direct_counts() {
    for (a, b) in [(1, 0), (-1, 1), (2, 3)] {
        for p in [5u64, 7, 11, 13] {
            let Ok(curve) = EllipticCurve::new(a, b, p) else { continue };
            let ap = count_points(&curve).unwrap();
            for k in 1..=3 {
                if p.pow(k) > 3000 {
                    continue;
                }
                let direct = brute_force_trace(&FiniteField::new(p, k as usize), a, b);
                assert_eq!(extension_trace(ap, p, k), BigInt::from(direct), "({a},{b}) over F_{p}^{k}");
            }
        }
    }
}
