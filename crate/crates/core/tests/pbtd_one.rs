use pbtlab::admissible::{verify_teaching_set, PreferenceRelation};
use pbtlab::class::{is_consistent, FiniteClass, LabeledExample, Sample, Sign};
use pbtlab::dims::{self, Budget, Dim};
use pbtlab::pbtd_one::{
    classify_singleton_extension, decide_pbtd_1, decide_pbtd_plus_1, flip_class, flip_concept, flip_sample,
    is_lower_triangularizable, FlipMask, SingletonExtension,
};
use pbtlab::report::verify_pbtd1_witness;
use pbtlab::suite::all_classes;
use proptest::prelude::*;

fn class_of(k: usize, masks: &[u64]) -> FiniteClass {
    FiniteClass::from_masks(k, masks).unwrap()
}

proptest! {
    #[test]
    fn flipping_preserves_consistency(k in 1usize..8, concept in any::<u64>(), mask in any::<u64>(), els in any::<u64>(), signs in any::<u64>()) {
        let bits = |v: u64| (0..k).filter(move |i| v >> i & 1 == 1);
        let l = pbtlab::class::Concept::from_mask(k, concept & ((1 << k) - 1));
        let m = FlipMask::new(k, bits(mask)).unwrap();
        let t = Sample::new(bits(els).map(|x| LabeledExample::new(x, Sign::from_bool(signs >> x & 1 == 1)))).unwrap();
        let fl = flip_concept(&m, &l).unwrap();
        let ft = flip_sample(&m, &t);
        prop_assert_eq!(is_consistent(&l, &t).unwrap(), is_consistent(&fl, &ft).unwrap());
        prop_assert_eq!(flip_concept(&m, &fl).unwrap(), l);
    }

    #[test]
    fn flipping_preserves_pbtd(masks in prop::collection::btree_set(0u64..16, 1..=7), flip in 0u64..16) {
        let b = Budget::default();
        let class = class_of(4, &masks.into_iter().collect::<Vec<_>>());
        let m = FlipMask::new(4, (0..4).filter(|i| flip >> i & 1 == 1)).unwrap();
        let flipped = flip_class(&m, &class).unwrap();
        prop_assert_eq!(dims::pbtd_bruteforce(&class, &b).unwrap().value, dims::pbtd_bruteforce(&flipped, &b).unwrap().value);
    }
}

#[test]
fn exhaustive_three_element_sweep() {
    let b = Budget::default();
    for class in all_classes(3) {
        let pbtd = dims::pbtd_bruteforce(&class, &b).unwrap().value;
        let pbtd_plus = dims::pbtd_plus_bruteforce(&class, &b).unwrap().value;

        let w = decide_pbtd_1(&class, &b).unwrap();
        assert_eq!(w.is_some(), pbtd <= Dim::Finite(1), "{:?}", class.concepts());
        if let Some(w) = w {
            let pref = w.preference();
            for (c, t) in w.samples.iter().enumerate() {
                assert!(t.len() <= 1);
                assert!(verify_teaching_set(c, &class, &pref, t).unwrap());
            }
            assert!(verify_pbtd1_witness(&class, &w.to_json(&class), false).unwrap());
        }

        let w = decide_pbtd_plus_1(&class, &b).unwrap();
        assert_eq!(w.is_some(), pbtd_plus <= Dim::Finite(1), "{:?}", class.concepts());
        if let Some(w) = w {
            let pref = PreferenceRelation::linear(&w.preferred_first()).unwrap();
            for (c, t) in w.samples().iter().enumerate() {
                assert!(verify_teaching_set(c, &class, &pref, t).unwrap());
            }
            assert!(verify_pbtd1_witness(&class, &w.to_json(&class), true).unwrap());
        }

        if let Some(yes) = classify_singleton_extension(&class).is_pbtd1() {
            assert_eq!(yes, pbtd <= Dim::Finite(1), "{:?}", class.concepts());
        }
    }
}

#[test]
fn examples() {
    let b = Budget::default();
    assert!(decide_pbtd_plus_1(&class_of(3, &[0, 1, 2, 4]), &b).unwrap().is_some());
    assert!(decide_pbtd_plus_1(&class_of(2, &[0, 1, 2, 3]), &b).unwrap().is_none());
    // antichain with private elements
    assert!(decide_pbtd_plus_1(&class_of(4, &[0b0011, 0b0110, 0b1100]), &b).unwrap().is_some());

    // [0, a] for a ∈ {0.1, 0.2, 0.3} on the points {0.1, 0.2, 0.3}
    assert!(decide_pbtd_1(&class_of(3, &[0b001, 0b011, 0b111]), &b).unwrap().is_some());
    assert!(decide_pbtd_1(&class_of(3, &[1, 2, 4, 0, 3]), &b).unwrap().is_none());
    let w = decide_pbtd_1(&class_of(2, &[1]), &b).unwrap().unwrap();
    assert!(w.samples[0].is_empty());

    let sg4 = [1u64, 2, 4, 8];
    assert_eq!(classify_singleton_extension(&class_of(4, &sg4)), SingletonExtension::PureSingletons);
    assert_eq!(classify_singleton_extension(&class_of(4, &[1, 2, 4, 8, 3])), SingletonExtension::PlusPair(0, 1));
    assert_eq!(classify_singleton_extension(&class_of(4, &[1, 2, 4, 8, 0, 3])), SingletonExtension::NotPbtd1);
    assert_eq!(classify_singleton_extension(&class_of(4, &[1, 2, 4, 8, 0])), SingletonExtension::PlusEmpty);
}

#[test]
fn triangular_witness_examples() {
    let singles = class_of(3, &[1, 2, 4]);
    assert!(is_lower_triangularizable(&singles, &[Some(0), Some(1), Some(2)]).unwrap().is_ok());
    // {1} ⊂ {1,2}: choosing 1 for both puts each concept's element in the other
    let chain = class_of(2, &[0b01, 0b11]);
    assert_eq!(is_lower_triangularizable(&chain, &[Some(0), Some(0)]).unwrap().unwrap_err().len(), 2);
    let w = is_lower_triangularizable(&chain, &[Some(0), Some(1)]).unwrap().unwrap();
    assert_eq!(w.preferred_first(), vec![0, 1]);
    let err = is_lower_triangularizable(&chain, &[Some(1), Some(1)]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn search_budget() {
    let b = Budget { max_search_nodes: 5, ..Budget::default() };
    let class = class_of(3, &[1, 2, 4, 0, 3, 5, 6]);
    assert_eq!(decide_pbtd_1(&class, &b).unwrap_err().exit_code(), 3);
}
