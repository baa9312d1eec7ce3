//! Teaching dimensions of finite classes against oracles written from the
//! definitions: subset enumeration for teaching sets and explicit
//! permutation enumeration for preference orders.

use pbtlab::admissible::{check_admissible, verify_teaching_set, Admissibility, PreferenceRelation, TeachingMap};
use pbtlab::class::{is_consistent, load_class, FiniteClass, Sample};
use pbtlab::dims::{self, Budget, Dim};
use pbtlab::gallery;
use pbtlab::report::{report_from_json, report_to_json, verify_report, Measure};
use proptest::prelude::*;

/// Smallest `|T|` with `T` labeled by `target` that no other member is consistent with.
/// With `positive`, `T ⊆ target`, and `None` if no such `T` exists.
fn oracle_td(class: &FiniteClass, target: usize, members: &[usize], positive: bool) -> Option<usize> {
    let n = class.universe().size();
    let l = class.concept(target);
    (0u32..1 << n)
        .filter(|m| !positive || (0..n).all(|x| m >> x & 1 == 0 || l.contains(x)))
        .filter(|m| {
            let t = Sample::labeled_by(l, (0..n).filter(|x| m >> x & 1 == 1));
            members
                .iter()
                .all(|&o| o == target || !is_consistent(class.concept(o), &t).unwrap())
        })
        .map(|m| m.count_ones() as usize)
        .min()
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Minimum over linear orders (most preferred first) of the largest teaching
/// set each concept needs against itself and the concepts preferred over it.
fn oracle_pbtd(class: &FiniteClass, positive: bool) -> Dim {
    permutations((0..class.len()).collect())
        .into_iter()
        .map(|order| {
            (0..order.len())
                .map(|i| match oracle_td(class, order[i], &order[..=i], positive) {
                    Some(v) => Dim::Finite(v),
                    None => Dim::Infinite,
                })
                .max()
                .unwrap()
        })
        .min()
        .unwrap()
}

fn class_strategy(max_universe: usize, max_concepts: usize) -> impl Strategy<Value = FiniteClass> {
    (1..=max_universe).prop_flat_map(move |k| {
        let cap = max_concepts.min(1 << k);
        prop::collection::btree_set(0u64..1 << k, 1..=cap)
            .prop_map(move |masks| FiniteClass::from_masks(k, &masks.into_iter().collect::<Vec<_>>()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn td_matches_subset_enumeration(class in class_strategy(5, 10)) {
        let all: Vec<usize> = (0..class.len()).collect();
        for c in 0..class.len() {
            let td = dims::teaching_dimension(&class, c).unwrap();
            prop_assert_eq!(Some(td), oracle_td(&class, c, &all, false));
            let ptd = dims::positive_teaching_dimension(&class, c).unwrap();
            prop_assert_eq!(ptd.finite(), oracle_td(&class, c, &all, true));
        }
    }

    #[test]
    fn pbtd_matches_permutation_oracle(class in class_strategy(4, 6)) {
        let b = Budget::default();
        prop_assert_eq!(dims::pbtd_bruteforce(&class, &b).unwrap().value, oracle_pbtd(&class, false));
        prop_assert_eq!(dims::pbtd_plus_bruteforce(&class, &b).unwrap().value, oracle_pbtd(&class, true));
    }

    #[test]
    fn pbtd_equals_rtd(class in class_strategy(5, 9)) {
        let b = Budget::default();
        let p = dims::pbtd_bruteforce(&class, &b).unwrap().value;
        prop_assert_eq!(p, dims::rtd(&class).unwrap().value);
        prop_assert_eq!(dims::pbtd_plus_bruteforce(&class, &b).unwrap().value, dims::rtd_plus(&class).unwrap().value);
    }

    #[test]
    fn greedy_rtd_is_optimal(class in class_strategy(4, 6)) {
        let b = Budget::default();
        prop_assert_eq!(dims::rtd(&class).unwrap().value, dims::rtd_bruteforce(&class, &b).unwrap());
        prop_assert_eq!(dims::rtd_plus(&class).unwrap().value, dims::rtd_plus_bruteforce(&class, &b).unwrap());
    }

    #[test]
    fn td_min_rtd_td_chain(class in class_strategy(5, 12)) {
        let r = dims::rtd(&class).unwrap().value.finite().unwrap();
        prop_assert!(dims::td_min(&class).unwrap() <= r);
        prop_assert!(r <= dims::td(&class).unwrap());
    }

    #[test]
    fn deleting_concepts_never_raises_pbtd(class in class_strategy(4, 9), drop in any::<u16>()) {
        let b = Budget::default();
        let keep: Vec<usize> = (0..class.len()).filter(|i| drop >> i & 1 == 0).collect();
        prop_assume!(!keep.is_empty());
        let sub = class.subclass(&keep).unwrap();
        prop_assert!(dims::pbtd_bruteforce(&sub, &b).unwrap().value <= dims::pbtd_bruteforce(&class, &b).unwrap().value);
    }

    #[test]
    fn pbtd_bounds_td_min_of_subclasses(class in class_strategy(4, 6)) {
        let b = Budget::default();
        let p = dims::pbtd_bruteforce(&class, &b).unwrap().value;
        for sel in 1u32..1 << class.len() {
            let keep: Vec<usize> = (0..class.len()).filter(|i| sel >> i & 1 == 1).collect();
            let sub = class.subclass(&keep).unwrap();
            prop_assert!(Dim::Finite(dims::td_min(&sub).unwrap()) <= p);
        }
    }

    #[test]
    fn witnesses_reverify(class in class_strategy(4, 8)) {
        let b = Budget::default();
        for m in Measure::ALL {
            let r = m.compute(&class, &b).unwrap();
            let back = report_from_json(&class, &report_to_json(&class, &r)).unwrap();
            let v = verify_report(&class, m, &back, &b).unwrap();
            prop_assert!(v.passed(), "{:?}: {}", m, v.detail);
        }
    }

    #[test]
    fn admissible_maps_teach_under_their_order(class in class_strategy(4, 8), seeds in prop::collection::vec(any::<u32>(), 8)) {
        let n = class.universe().size();
        let samples: Vec<Sample> = (0..class.len())
            .map(|c| Sample::labeled_by(class.concept(c), (0..n).filter(|x| seeds[c] >> x & 1 == 1)))
            .collect();
        let tm = TeachingMap::new(&class, samples).unwrap();
        if let Admissibility::Admissible(pref) = check_admissible(&tm, &class).unwrap() {
            for c in 0..class.len() {
                prop_assert!(verify_teaching_set(c, &class, &pref, tm.sample(c)).unwrap());
            }
        }
    }
}

fn class_of(masks: &[u64], k: usize) -> FiniteClass {
    FiniteClass::from_masks(k, masks).unwrap()
}

#[test]
fn dimension_examples() {
    let b = Budget::default();
    let p3 = gallery::powerset(3).unwrap();
    assert!((0..8).all(|c| dims::teaching_dimension(&p3, c).unwrap() == 3));
    assert_eq!(dims::rtd(&p3).unwrap().value, Dim::Finite(3));
    assert_eq!(dims::teaching_dimension(&class_of(&[5], 3), 0).unwrap(), 0);
    assert_eq!(dims::td(&class_of(&[5], 3)).unwrap(), 0);
    assert_eq!(dims::td_min(&gallery::k_choose_l(4, 2).unwrap()).unwrap(), 2);
    assert_eq!(dims::td_min(&gallery::lk_window(3).unwrap()).unwrap(), 2);

    // {∅, {1}}: positive TD of {1} is 1; {{1},{1,2}}: {1} has a proper superset
    assert_eq!(dims::positive_teaching_dimension(&class_of(&[0, 1], 1), 1).unwrap(), Dim::Finite(1));
    assert_eq!(dims::positive_teaching_dimension(&class_of(&[1, 3], 2), 0).unwrap(), Dim::Infinite);
    let singles = gallery::k_choose_l(3, 1).unwrap();
    assert!((0..3).all(|c| dims::positive_teaching_dimension(&singles, c).unwrap() == Dim::Finite(1)));
    assert_eq!(dims::rtd(&singles).unwrap().value, Dim::Finite(1));

    let f = gallery::f_signclass();
    assert_eq!(dims::rtd(&f).unwrap().value, Dim::Finite(2));
    assert_eq!(dims::pbtd_bruteforce(&f, &b).unwrap().value, Dim::Finite(2));
    assert_eq!(dims::pbtd_bruteforce(&gallery::powerset(2).unwrap(), &b).unwrap().value, Dim::Finite(2));
    assert_eq!(dims::pbtd_bruteforce(&class_of(&[0, 1, 3], 2), &b).unwrap().value, Dim::Finite(1));
}

#[test]
fn order_search_budget() {
    let b = Budget::default();
    let err = dims::pbtd_bruteforce(&gallery::powerset(4).unwrap(), &b).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    assert!(err.to_string().contains("rtd"));
    assert_eq!(dims::rtd(&gallery::powerset(4).unwrap()).unwrap().value, Dim::Finite(4));
}

#[test]
fn relation_examples() {
    let chain = class_of(&[0, 1], 1);
    let tm = TeachingMap::new(&chain, vec![Sample::empty(), Sample::positive([0])]).unwrap();
    assert_eq!(pbtlab::admissible::build_relation(&tm, &chain), vec![(1, 0)]);
    assert!(check_admissible(&tm, &chain).unwrap().is_admissible());

    // {1}, {2} over {1,2,3} both taught by (3,−)
    let two = class_of(&[0b001, 0b010], 3);
    let neg = Sample::labeled_by(two.concept(0), [2]);
    let tm = TeachingMap::new(&two, vec![neg.clone(), neg]).unwrap();
    assert!(!check_admissible(&tm, &two).unwrap().is_admissible());

    let chain = class_of(&[0b00, 0b01, 0b11], 2);
    let pref = PreferenceRelation::smaller_preferred(&chain);
    assert!(verify_teaching_set(1, &chain, &pref, &Sample::positive([0])).unwrap());
    assert!(!verify_teaching_set(1, &chain, &pref, &Sample::empty()).unwrap());
    let none = PreferenceRelation::empty(3);
    let t = Sample::labeled_by(chain.concept(1), [0, 1]);
    assert!(verify_teaching_set(1, &chain, &none, &t).unwrap());
    assert!(!verify_teaching_set(1, &chain, &none, &Sample::positive([0])).unwrap());
}

#[test]
fn class_file_round_trip() {
    let doc = br#"{"universe": ["a", "b"], "concepts": {"L1": [1, 0]}}"#;
    let c = load_class(doc).unwrap();
    assert_eq!(c.len(), 1);
    let dup = br#"{"universe": ["a", "b"], "concepts": {"L1": [1, 0], "L2": [1, 0]}}"#;
    assert!(load_class(dup).unwrap_err().to_string().contains("L2"));
    let short = br#"{"universe": ["a", "b"], "concepts": {"L1": [1]}}"#;
    assert!(load_class(short).unwrap_err().to_string().contains("L1"));
    let p3 = gallery::powerset(3).unwrap();
    assert_eq!(load_class(&pbtlab::class::save_class(&p3)).unwrap(), p3);
}
