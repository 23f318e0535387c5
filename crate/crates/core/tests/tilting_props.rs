use num_bigint::BigUint;
use proptest::prelude::*;

use tiltwalk_core::tilting::{
    cg_square_free_product, count_summands, count_weyl, delta_factors, dim_tilting,
    tilting_decompose, DeltaMultiset, Weight,
};

fn product(ks: &[u64], ell: u64) -> DeltaMultiset {
    ks.iter().fold(DeltaMultiset::single(Weight(0)), |acc, &k| {
        cg_square_free_product(&acc, &delta_factors(Weight(k), ell))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn products_of_tiltings_decompose(ks in prop::collection::vec(0u64..=20, 0..=6), ell in 2u64..=9) {
        let d = product(&ks, ell);
        let td = tilting_decompose(&d, ell).expect("tilting");
        prop_assert_eq!(td.expand(), d.clone());
        let dim: BigUint = ks.iter().map(|&k| dim_tilting(Weight(k), ell)).product();
        prop_assert_eq!(td.dimension(), dim.clone());
        prop_assert_eq!(d.dimension(), dim);
        let (s, w) = (count_summands(&td), count_weyl(&d));
        prop_assert!(s <= w && w <= &s * 2u32);
    }

    #[test]
    fn clebsch_gordan_is_associative_and_commutative(a in 0u64..=15, b in 0u64..=15, c in 0u64..=15, ell in 2u64..=9) {
        let (da, db, dc) = (delta_factors(Weight(a), ell), delta_factors(Weight(b), ell), delta_factors(Weight(c), ell));
        let left = cg_square_free_product(&cg_square_free_product(&da, &db), &dc);
        let right = cg_square_free_product(&da, &cg_square_free_product(&db, &dc));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(cg_square_free_product(&da, &db), cg_square_free_product(&db, &da));
    }

    #[test]
    fn decomposition_is_unique_on_sums(ks in prop::collection::vec(0u64..=30, 1..=5), ell in 2u64..=9) {
        // A direct sum of indecomposables decomposes back into itself.
        let mut d = DeltaMultiset::new();
        for &k in &ks {
            for (j, m) in delta_factors(Weight(k), ell).iter() {
                d.add(j, m.clone());
            }
        }
        let td = tilting_decompose(&d, ell).unwrap();
        prop_assert_eq!(count_summands(&td), BigUint::from(ks.len()));
        for &k in &ks {
            prop_assert!(td.get(Weight(k)) >= BigUint::from(1u8));
        }
    }
}
