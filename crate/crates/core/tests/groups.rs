mod common;

use blockinv_core::groups::{
    abelianization_order, brute_class_count_of, class_count, derived_class_count, derived_order,
    group_order, parse_group_spec, GroupError, GroupSpec, DEFAULT_ORDER_CAP,
};
use blockinv_core::{Ell, Nat};
use proptest::prelude::*;

#[test]
fn formula_matches_brute_force_on_suite() {
    let mut checked = 0;
    for &(text, pinned) in common::GROUP_SUITE {
        let spec = parse_group_spec(text).unwrap();
        if group_order(&spec) > Nat::from(DEFAULT_ORDER_CAP) {
            continue;
        }
        let k = class_count(&spec);
        assert_eq!(brute_class_count_of(&spec, DEFAULT_ORDER_CAP).unwrap(), k, "{text}");
        if let Some(v) = pinned {
            assert_eq!(k, Nat::from(v), "{text}");
        }
        checked += 1;
    }
    assert!(checked >= 12);
}

#[test]
fn semidihedral_derived_subgroups() {
    for atilde in 2..=5u32 {
        let sd = GroupSpec::semidihedral(atilde);
        assert_eq!(derived_class_count(&sd, DEFAULT_ORDER_CAP).unwrap(), Nat::from(1u64 << atilde));
    }
}

#[test]
fn sylow3_of_gl3_derived_order() {
    let d = GroupSpec::d_factor(Ell::Three, 1, 1);
    assert_eq!(derived_order(&d, DEFAULT_ORDER_CAP).unwrap(), Nat::from(9u32));
    assert_eq!(derived_class_count(&d, DEFAULT_ORDER_CAP).unwrap(), Nat::from(9u32));
}

#[test]
fn abelianization_matches_derived_index() {
    for &(text, _) in common::GROUP_SUITE {
        let spec = parse_group_spec(text).unwrap();
        if group_order(&spec) > Nat::from(20_000u32) {
            continue;
        }
        let index = group_order(&spec) / derived_order(&spec, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(index, abelianization_order(&spec), "{text}");
    }
}

#[test]
fn cap_is_enforced() {
    let big = parse_group_spec("wr(wr(c(3),3),3)").unwrap();
    assert!(matches!(
        derived_class_count(&big, DEFAULT_ORDER_CAP),
        Err(GroupError::CapExceeded { .. })
    ));
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1u64..=12).prop_map(GroupSpec::cyclic),
        (2u32..=5).prop_map(GroupSpec::semidihedral),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), prop_oneof![Just(2u32), Just(3u32)]).prop_map(|(g, p)| GroupSpec::wreath(g, p)),
            prop::collection::vec((inner, 1u32..=3), 1..=3).prop_map(GroupSpec::Product),
        ]
    })
}

proptest! {
    #[test]
    fn display_parses_back(spec in spec_strategy()) {
        let text = spec.to_string();
        let parsed = parse_group_spec(&text).unwrap();
        prop_assert_eq!(class_count(&parsed), class_count(&spec));
        prop_assert_eq!(group_order(&parsed), group_order(&spec));
    }

    #[test]
    fn small_random_specs_match_brute_force(spec in spec_strategy()) {
        prop_assume!(group_order(&spec) <= Nat::from(3_000u32));
        prop_assert_eq!(brute_class_count_of(&spec, DEFAULT_ORDER_CAP).unwrap(), class_count(&spec));
    }
}
