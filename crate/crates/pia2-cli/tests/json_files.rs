use proptest::prelude::*;

use pia2::ainf::expected_table;
use pia2::symbols::ExtSymbol;
use pia2::transfer::OperationTable;
use pia2_cli::json::{table_from_json, table_json, to_pretty, TableJson};

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn any_sub_table_round_trips(keep in proptest::collection::vec(any::<bool>(), 200), arity in 2usize..7, degree in 0i64..5) {
        let full = expected_table(arity, degree, None).table;
        let mut t = OperationTable::new(full.meta.clone());
        for ((k, v), &b) in full.entries().zip(keep.iter().cycle()) {
            if b {
                t.insert(k.clone(), v.clone());
            }
        }
        let j = table_json("pia2", &t);
        let text = to_pretty(&j).unwrap();
        let parsed: TableJson = serde_json::from_str(&text).unwrap();
        let back: OperationTable<ExtSymbol> = table_from_json(&parsed).unwrap();
        prop_assert_eq!(to_pretty(&table_json("pia2", &back)).unwrap(), text);
        prop_assert_eq!(back.len(), t.len());
    }
}
