use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use tiltwalk_core::io::{
    parse_csv_matrix, rows_from_json, series_from_json, series_to_json, sums_from_json,
    sums_to_json, table_matrix, table_to_csv, table_to_json, DecompositionRecord,
};
use tiltwalk_core::series::RationalSeries;
use tiltwalk_core::tilting::{tensor_power, Weight};
use tiltwalk_core::walks::{classical_table, modular_table};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tables_round_trip(ell in 2u64..=12, order in 0usize..=40, classical in any::<bool>()) {
        let t = if classical { classical_table(order) } else { modular_table(ell, order).unwrap() };
        prop_assert_eq!(parse_csv_matrix(&table_to_csv(&t)).unwrap(), table_matrix(&t));
        let rows = rows_from_json(&table_to_json(&t)).unwrap();
        prop_assert_eq!(rows.as_slice(), t.rows());
    }

    #[test]
    fn sums_round_trip(words in prop::collection::vec(prop::collection::vec(any::<u32>(), 0..6), 0..20)) {
        let values: Vec<BigUint> = words.into_iter().map(BigUint::new).collect();
        prop_assert_eq!(sums_from_json(&sums_to_json(&values)).unwrap(), values);
    }

    #[test]
    fn series_round_trip(pairs in prop::collection::vec((any::<i64>(), 1i64..1_000_000), 1..16)) {
        let coeffs: Vec<BigRational> = pairs
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        let n = coeffs.len() - 1;
        let s = RationalSeries::from_coeffs(coeffs, n);
        prop_assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn decompositions_round_trip(k in 0u64..=12, n in 0usize..=5, ell in 2u64..=9) {
        let (td, d) = tensor_power(Weight(k), n, ell).unwrap();
        let rec = DecompositionRecord::new(&td, &d);
        let back = DecompositionRecord::from_json(&rec.to_json()).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(back.to_parts().unwrap(), (td, d));
    }
}
