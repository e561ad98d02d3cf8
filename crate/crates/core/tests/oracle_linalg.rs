mod common;

use common::oracle::check_linalg_instance;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn instance() -> impl Strategy<Value = (u64, u32, Vec<Vec<u64>>, Vec<u64>)> {
    prop_oneof![Just((3u64, 1u32)), Just((3, 2)), Just((3, 3)), Just((5, 1)), Just((5, 2)), Just((7, 1))]
        .prop_flat_map(|(p, n)| {
            let q = p.pow(n);
            let d = if q > 25 { 2usize } else { 3 };
            (1usize..=4).prop_flat_map(move |r| {
                (
                    Just(p),
                    Just(n),
                    prop::collection::vec(prop::collection::vec(0..q, d), r),
                    prop::collection::vec(0..q, r),
                )
            })
        })
}

proptest! {
    #![proptest_config(Config {
        cases: 500,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    })]

    #[test]
    fn linear_algebra_matches_brute_force((p, n, rows, b) in instance()) {
        prop_assert_eq!(check_linalg_instance(p, n, &rows, &b), Ok(()));
    }

    #[test]
    fn powers_of_p_in_rows((p, n, rows, b) in instance(), k in 0u32..3) {
        let q = p.pow(n);
        let scale = p.pow(k.min(n - 1));
        let rows: Vec<Vec<u64>> = rows.into_iter().map(|r| r.into_iter().map(|x| x * scale % q).collect()).collect();
        prop_assert_eq!(check_linalg_instance(p, n, &rows, &b), Ok(()));
    }
}
