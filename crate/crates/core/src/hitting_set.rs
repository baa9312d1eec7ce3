//! Exact minimum hitting set by branch and bound.
//!
//! Sets are bitsets over `0..universe`. The solver returns a smallest set of
//! elements meeting every input set, or `None` when some input set is empty.
//! Branching always picks the smallest unhit set and tries its elements in
//! ascending order, so the reported witness is deterministic.

use fixedbitset::FixedBitSet;

pub fn min_hitting_set(universe: usize, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    if sets.iter().any(|s| s.is_clear()) {
        return None;
    }
    let sets = reduce_supersets(sets);
    if sets.is_empty() {
        return Some(Vec::new());
    }
    let mut best = greedy(universe, &sets);
    let mut chosen = Vec::new();
    let hit = vec![false; sets.len()];
    search(&sets, &hit, &mut chosen, &mut best);
    best.sort_unstable();
    Some(best)
}

/// Drops duplicates and any set containing another set: hitting the smaller
/// one hits the larger.
fn reduce_supersets(sets: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut sorted: Vec<&FixedBitSet> = sets.iter().collect();
    sorted.sort_by_key(|s| s.count_ones(..));
    let mut kept: Vec<FixedBitSet> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s.clone());
        }
    }
    kept
}

fn greedy(universe: usize, sets: &[FixedBitSet]) -> Vec<usize> {
    let mut hit = vec![false; sets.len()];
    let mut picked = Vec::new();
    while hit.iter().any(|h| !h) {
        let mut best = (0usize, 0usize);
        for x in 0..universe {
            let gain = sets
                .iter()
                .zip(&hit)
                .filter(|(s, h)| !**h && s.contains(x))
                .count();
            if gain > best.1 {
                best = (x, gain);
            }
        }
        picked.push(best.0);
        for (s, h) in sets.iter().zip(hit.iter_mut()) {
            if s.contains(best.0) {
                *h = true;
            }
        }
    }
    picked
}

/// Lower bound: number of pairwise disjoint unhit sets found greedily.
fn packing_bound(sets: &[FixedBitSet], hit: &[bool]) -> usize {
    let mut used: Option<FixedBitSet> = None;
    let mut count = 0;
    let mut order: Vec<usize> = (0..sets.len()).filter(|&i| !hit[i]).collect();
    order.sort_by_key(|&i| sets[i].count_ones(..));
    for i in order {
        let s = &sets[i];
        match &mut used {
            None => {
                used = Some(s.clone());
                count += 1;
            }
            Some(u) => {
                if u.is_disjoint(s) {
                    u.union_with(s);
                    count += 1;
                }
            }
        }
    }
    count
}

fn search(sets: &[FixedBitSet], hit: &[bool], chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    let pick = (0..sets.len())
        .filter(|&i| !hit[i])
        .min_by_key(|&i| (sets[i].count_ones(..), i));
    let Some(pick) = pick else {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    };
    if chosen.len() + packing_bound(sets, hit) >= best.len() {
        return;
    }
    for x in sets[pick].ones() {
        let next: Vec<bool> = sets
            .iter()
            .zip(hit)
            .map(|(s, &h)| h || s.contains(x))
            .collect();
        chosen.push(x);
        search(sets, &next, chosen, best);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in xs {
            b.insert(x);
        }
        b
    }

    /// Smallest hitting set by enumerating all subsets in order of size.
    fn brute_force(n: usize, sets: &[FixedBitSet]) -> Option<usize> {
        (0u32..1 << n)
            .filter(|m| {
                sets.iter()
                    .all(|s| s.ones().any(|x| m >> x & 1 == 1))
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(min_hitting_set(3, &[]), Some(vec![]));
        assert_eq!(min_hitting_set(3, &[bs(3, &[])]), None);
        assert_eq!(min_hitting_set(3, &[bs(3, &[2])]), Some(vec![2]));
    }

    #[test]
    fn disjoint_sets_need_one_each() {
        let sets = [bs(4, &[0]), bs(4, &[1]), bs(4, &[2, 3])];
        assert_eq!(min_hitting_set(4, &sets).unwrap().len(), 3);
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // Greedy takes 0 first (it hits three sets) and then needs two more.
        let sets = [
            bs(5, &[0, 1]),
            bs(5, &[0, 2]),
            bs(5, &[0, 3]),
            bs(5, &[1, 4]),
            bs(5, &[2, 4]),
            bs(5, &[3, 4]),
        ];
        let h = min_hitting_set(5, &sets).unwrap();
        assert_eq!(h, vec![0, 4]);
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..7, raw in prop::collection::vec(1u32..64, 0..8)) {
            let sets: Vec<FixedBitSet> = raw
                .iter()
                .map(|m| bs(n, &(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
                .collect();
            let got = min_hitting_set(n, &sets);
            prop_assert_eq!(got.as_ref().map(|h| h.len()), brute_force(n, &sets));
            if let Some(h) = got {
                for s in &sets {
                    prop_assert!(h.iter().any(|&x| s.contains(x)));
                }
            }
        }
    }
}
