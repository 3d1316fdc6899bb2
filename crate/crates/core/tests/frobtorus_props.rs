use frobsys::frobpoly::{power_charpoly, sum_charpoly, tensor_charpoly, CharPoly};
use frobsys::frobtorus::{rank_compare, torus_rank, RankConfig, TorusRankResult};
use frobsys::systems::{FrobSample, Place};
use frobsys::Error;
use proptest::prelude::*;

fn int_charpoly(max_degree: usize) -> impl Strategy<Value = CharPoly> {
    (prop::collection::vec(-5i64..=5, 1..=max_degree), 1i64..=7, any::<bool>()).prop_map(|(mut c, c0, neg)| {
        c[0] = if neg { -c0 } else { c0 };
        c.push(1);
        CharPoly::from_ints(&c).unwrap()
    })
}

/// Exact rank when the roots are available in a quadratic extension,
/// otherwise the heuristic one; `None` when the roots are too close to
/// separate at this precision.
fn rank(p: &CharPoly) -> Option<TorusRankResult> {
    let r = match torus_rank(p, &RankConfig::default()) {
        Err(Error::NotSplit(_)) => torus_rank(p, &RankConfig::heuristic()),
        r => r,
    };
    match r {
        Err(Error::PrecisionExhausted(_)) => None,
        r => Some(r.unwrap()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_is_invariant_under_powers(p in int_charpoly(3), n in 2u64..=6) {
        let (Some(r), Some(rn)) = (rank(&p), rank(&power_charpoly(&p, n).unwrap())) else {
            return Err(TestCaseError::reject("roots not separated"));
        };
        prop_assert_eq!(r.rank_estimate, rn.rank_estimate);
        prop_assert!(r.rank_estimate <= r.dimension());
    }

    #[test]
    fn tensor_square_does_not_raise_rank(p in int_charpoly(2)) {
        let (Some(r), Some(rt)) = (rank(&p), rank(&tensor_charpoly(&p, &p).unwrap())) else {
            return Err(TestCaseError::reject("roots not separated"));
        };
        prop_assert!(rt.rank_estimate <= r.rank_estimate);
    }

    #[test]
    fn scaling_by_an_integer_moves_rank_by_at_most_one(p in int_charpoly(3), q in 2i64..=7) {
        let scaled = tensor_charpoly(&p, &CharPoly::from_ints(&[-q, 1]).unwrap()).unwrap();
        let (Some(r), Some(rs)) = (rank(&p), rank(&scaled)) else {
            return Err(TestCaseError::reject("roots not separated"));
        };
        prop_assert!(r.rank_estimate.abs_diff(rs.rank_estimate) <= 1);
    }

    #[test]
    fn distinct_primes_are_independent(
        primes in prop::sample::subsequence(vec![2i64, 3, 5, 7, 11, 13, 17, 19], 1..=5),
        signs in prop::collection::vec(any::<bool>(), 5),
    ) {
        let mut p = CharPoly::from_ints(&[if signs[0] { -primes[0] } else { primes[0] }, 1]).unwrap();
        for (q, s) in primes.iter().zip(&signs).skip(1) {
            let root = if *s { *q } else { -q };
            p = sum_charpoly(&p, &CharPoly::from_ints(&[-root, 1]).unwrap()).unwrap();
        }
        let r = torus_rank(&p, &RankConfig::default()).unwrap();
        prop_assert_eq!(r.rank_estimate, primes.len());
        prop_assert!(r.certified);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let inputs = [vec![5, -2, 1], vec![7, 0, 1], vec![-6, 1], vec![13, -4, 6, -4, 1], vec![2, 0, 0, 1]];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            inputs
                .iter()
                .map(|c| format!("{:?}", torus_rank(&CharPoly::from_ints(c).unwrap(), &RankConfig::default())))
                .collect::<Vec<_>>()
        })
    };
    let single = run(1);
    assert!(single[4].contains("NotSplit"));
    assert_eq!(single, run(4));
}

#[test]
fn heuristic_mode_reports_an_uncertified_upper_bound() {
    let p = CharPoly::from_ints(&[5, -2, 1]).unwrap();
    let r = torus_rank(&p, &RankConfig::heuristic()).unwrap();
    assert_eq!(r.rank_estimate, 2);
    assert_eq!(r.rank_certified_upper, 2);
    assert!(!r.certified);
}

#[test]
fn comparison_across_sheets_at_one_place() {
    let place = Place::prime(5).unwrap();
    let a = FrobSample::new(place.clone(), 1, CharPoly::from_ints(&[5, -2, 1]).unwrap()).unwrap();
    let b = FrobSample::new(place.clone(), 2, CharPoly::from_ints(&[25, 6, 1]).unwrap()).unwrap();
    let cmp = rank_compare(&[("l3".into(), a.clone()), ("l7".into(), b)], &RankConfig::default()).unwrap();
    assert_eq!(cmp.level, 2);
    assert!(cmp.ranks_agree());
    assert!(cmp.all_certified());

    let other = FrobSample::new(Place::prime(7).unwrap(), 1, CharPoly::from_ints(&[7, 0, 1]).unwrap()).unwrap();
    assert!(rank_compare(&[("l3".into(), a), ("l7".into(), other)], &RankConfig::default()).is_err());
    assert!(rank_compare(&[], &RankConfig::default()).is_err());
}

#[test]
fn rejects_bad_configuration() {
    let p = CharPoly::from_ints(&[5, -2, 1]).unwrap();
    let cfg = RankConfig { precision_bits: 16, ..RankConfig::default() };
    assert!(matches!(torus_rank(&p, &cfg), Err(Error::InvalidArgument(_))));
    let cfg = RankConfig { relation_bound: 0, ..RankConfig::default() };
    assert!(matches!(torus_rank(&p, &cfg), Err(Error::InvalidArgument(_))));
}
