use chainlab_core::ordinal::{compare, natural_sum, parse_cnf, rwo1_bound, OrdinalCNF};
use proptest::prelude::*;

fn cnf() -> impl Strategy<Value = OrdinalCNF> {
    prop::collection::vec(0u64..50, 0..7).prop_map(OrdinalCNF::from_coefficients)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sum_laws(x in cnf(), y in cnf(), z in cnf()) {
        prop_assert_eq!(natural_sum(&x, &y), natural_sum(&y, &x));
        prop_assert_eq!(natural_sum(&natural_sum(&x, &y), &z), natural_sum(&x, &natural_sum(&y, &z)));
        prop_assert_eq!(natural_sum(&x, &OrdinalCNF::zero()), x.clone());
        if x < y {
            prop_assert!(natural_sum(&x, &z) < natural_sum(&y, &z));
        }
    }

    #[test]
    fn text_round_trips(x in cnf()) {
        prop_assert_eq!(parse_cnf(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn order_is_total_and_consistent(x in cnf(), y in cnf()) {
        prop_assert_eq!(compare(&x, &y), compare(&y, &x).reverse());
        prop_assert_eq!(compare(&x, &y).is_eq(), x == y);
    }
}

#[test]
fn bounds_are_ordered() {
    for q in 1..=12 {
        let b = rwo1_bound(q).unwrap();
        assert!(b.bound < b.below && b.below < b.ceiling, "q = {q}");
    }
}

#[test]
fn rejects_bad_text() {
    for bad in ["", "w^", "w*", "+1", "w^2*0", "w+w^3", "1+1", "w^-1", "2w", "w^2*3++1"] {
        assert!(parse_cnf(bad).is_err(), "{bad:?}");
    }
}
