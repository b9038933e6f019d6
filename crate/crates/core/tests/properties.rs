//! Randomized invariants: encodings round-trip, printing round-trips
//! through the parser, and subtrees of valid codes stay valid.

use std::collections::BTreeSet;

use proptest::prelude::*;

use czf_realizability::formula::{parse, Formula, Term};
use czf_realizability::pca::{decode_tuple, encode_tuple, nat, pair, unpair, Nat};
use czf_realizability::treeset::{validate, TreeSet, Tuple};

fn arb_nat() -> impl Strategy<Value = Nat> {
    (0u64..10_000).prop_map(nat)
}

proptest! {
    #[test]
    fn tuple_encoding_round_trips(s in proptest::collection::vec(arb_nat(), 0..8)) {
        prop_assert_eq!(decode_tuple(&encode_tuple(&s)), s);
    }

    #[test]
    fn pairing_round_trips(x in arb_nat(), y in arb_nat()) {
        prop_assert_eq!(unpair(&pair(&x, &y)), (x, y));
    }

    #[test]
    fn tuple_encoding_is_injective(
        a in proptest::collection::vec(arb_nat(), 0..6),
        b in proptest::collection::vec(arb_nat(), 0..6),
    ) {
        prop_assert_eq!(encode_tuple(&a) == encode_tuple(&b), a == b);
    }
}

fn var_name() -> impl Strategy<Value = String> {
    // prefixed so no draw collides with a keyword
    "[a-z0-9]{0,3}".prop_map(|s| format!("v{s}"))
}

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        "[a-z0-9]{0,3}".prop_map(|s| Term::Var(format!("v{s}"))),
        "[A-Za-z][a-z0-9]{0,3}".prop_map(Term::Param),
    ]
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bot),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::eq(a, b)),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::mem(a, b)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (var_name(), inner.clone())
                .prop_map(|(v, b)| Formula::forall(&v, b)),
            (var_name(), inner.clone())
                .prop_map(|(v, b)| Formula::exists(&v, b)),
            (var_name(), arb_term(), inner.clone())
                .prop_map(|(v, t, b)| Formula::forall_in(&v, t, b)),
            (var_name(), arb_term(), inner)
                .prop_map(|(v, t, b)| Formula::exists_in(&v, t, b)),
        ]
    })
}

proptest! {
    #[test]
    fn formula_display_round_trips(f in arb_formula()) {
        // parsing alpha-disambiguates binders; compare after one pass
        let canon = parse(&f.to_string()).expect("printed form parses");
        prop_assert_eq!(parse(&canon.to_string()), Ok(canon));
    }
}

fn arb_code() -> impl Strategy<Value = TreeSet> {
    proptest::collection::vec(proptest::collection::vec(0u64..5, 0..4), 0..12).prop_map(|raw| {
        let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
        for t in raw {
            // close under prefixes so every draw is a valid code
            for k in 0..=t.len() {
                tuples.insert(t[..k].iter().copied().map(nat).collect());
            }
        }
        tuples.insert(Vec::new());
        TreeSet::from_tuples(tuples).expect("prefix closure is valid")
    })
}

proptest! {
    #[test]
    fn subtrees_of_valid_codes_are_valid(s in arb_code()) {
        for t in s.tuples() {
            prop_assert!(validate(s.subtree(t).tuples()).is_ok());
        }
    }

    #[test]
    fn set_files_round_trip(s in arb_code()) {
        prop_assert_eq!(TreeSet::parse_file_str(&s.to_file_string()), Ok(s));
    }

    #[test]
    fn decode_is_label_invariant(s in arb_code(), shift in 1u64..20) {
        // relabel first-level members by an order-preserving shift
        let mut tuples: BTreeSet<Tuple> = BTreeSet::new();
        for t in s.tuples() {
            let mut t2 = t.clone();
            if let Some(h) = t2.first_mut() {
                *h += nat(shift);
            }
            tuples.insert(t2);
        }
        let s2 = TreeSet::from_tuples(tuples).unwrap();
        prop_assert_eq!(s.decode(), s2.decode());
    }
}
