//! Exact teaching dimensions of finite classes: TD, TD_min, positive TD,
//! RTD / RTD⁺ by the greedy teaching plan, and PBTD / PBTD⁺ by exhaustive
//! minimization over linear preference orders.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::class::{FiniteClass, Sample};
use crate::error::{Error, Result};
use crate::hitting_set::min_hitting_set;

/// A dimension value: a natural number or `INFINITE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(n) => Some(n),
            Dim::Infinite => None,
        }
    }
}

impl From<usize> for Dim {
    fn from(n: usize) -> Self {
        Dim::Finite(n)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n as u64),
            Dim::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Dim::Finite(n as usize)),
            Raw::S(s) if s == "INFINITE" => Ok(Dim::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad dimension {s:?}"))),
        }
    }
}

/// Limits for the exponential searches.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Largest class handled by the order minimization behind PBTD.
    pub max_order_concepts: usize,
    /// Largest class handled by the teaching-sequence enumeration.
    pub max_sequence_concepts: usize,
    /// Node limit for backtracking searches.
    pub max_search_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order_concepts: 9,
            max_sequence_concepts: 6,
            max_search_nodes: 50_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    /// Default budget, with the deadline taken from `PBTLAB_BUDGET_MS` if set.
    pub fn from_env() -> Self {
        let budget = Budget::default();
        match std::env::var("PBTLAB_BUDGET_MS").ok().and_then(|v| v.parse::<u64>().ok()) {
            Some(ms) => budget.with_time_limit(Duration::from_millis(ms)),
            None => budget,
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::resource("solver time budget exhausted")),
            _ => Ok(()),
        }
    }
}

/// The witness backing a reported dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// One minimum teaching set per concept w.r.t. the whole class.
    TeachingSets { sets: Vec<Sample> },
    /// Layers of a teaching sequence; `sets[c]` teaches `c` against its own
    /// layer and all later layers.
    Sequence { layers: Vec<Vec<usize>>, sets: Vec<Sample> },
    /// A linear preference order, most preferred first; `sets[c]` teaches `c`
    /// against the concepts preferred over it.
    Order { preferred_first: Vec<usize>, sets: Vec<Sample> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub value: Dim,
    pub witness: Witness,
    pub method: String,
}

fn all_members(class: &FiniteClass) -> Vec<usize> {
    (0..class.len()).collect()
}

fn members_of(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// A minimum teaching set for concept `target` w.r.t. the concepts in `members`.
pub fn min_teaching_set(class: &FiniteClass, target: usize, members: &[usize]) -> Result<Sample> {
    class.require_index(target)?;
    let l = class.concept(target);
    let sets: Vec<_> = members
        .iter()
        .filter(|&&j| j != target)
        .map(|&j| l.disagreement(class.concept(j)))
        .collect();
    let hs = min_hitting_set(class.universe().size(), &sets)
        .expect("distinct concepts always disagree somewhere");
    Ok(Sample::labeled_by(l, hs))
}

/// A minimum positive teaching set, or `None` if some member is a proper
/// superset of the target.
pub fn min_positive_teaching_set(
    class: &FiniteClass,
    target: usize,
    members: &[usize],
) -> Result<Option<Sample>> {
    class.require_index(target)?;
    let l = class.concept(target);
    let sets: Vec<_> = members
        .iter()
        .filter(|&&j| j != target)
        .map(|&j| l.difference(class.concept(j)))
        .collect();
    Ok(min_hitting_set(class.universe().size(), &sets).map(Sample::positive))
}

pub fn teaching_dimension(class: &FiniteClass, target: usize) -> Result<usize> {
    Ok(min_teaching_set(class, target, &all_members(class))?.len())
}

pub fn positive_teaching_dimension(class: &FiniteClass, target: usize) -> Result<Dim> {
    Ok(match min_positive_teaching_set(class, target, &all_members(class))? {
        Some(t) => Dim::Finite(t.len()),
        None => Dim::Infinite,
    })
}

pub fn td_min(class: &FiniteClass) -> Result<usize> {
    td_report(class, true).map(|r| r.value.finite().unwrap_or(0))
}

pub fn td(class: &FiniteClass) -> Result<usize> {
    td_report(class, false).map(|r| r.value.finite().unwrap_or(0))
}

/// TD (`minimum = false`) or TD_min with all per-concept teaching sets as witness.
pub fn td_report(class: &FiniteClass, minimum: bool) -> Result<DimensionReport> {
    class.require_nonempty()?;
    let members = all_members(class);
    let sets = members
        .iter()
        .map(|&i| min_teaching_set(class, i, &members))
        .collect::<Result<Vec<_>>>()?;
    let sizes = sets.iter().map(Sample::len);
    let value = if minimum { sizes.min() } else { sizes.max() }.unwrap_or(0);
    Ok(DimensionReport {
        value: Dim::Finite(value),
        witness: Witness::TeachingSets { sets },
        method: if minimum { "td_min" } else { "td" }.into(),
    })
}

fn greedy_sequence(class: &FiniteClass, positive: bool) -> Result<DimensionReport> {
    class.require_nonempty()?;
    let mut remaining = all_members(class);
    let mut sets = vec![Sample::empty(); class.len()];
    let mut layers = Vec::new();
    let mut order = 0usize;
    while !remaining.is_empty() {
        let mut round = Vec::with_capacity(remaining.len());
        for &c in &remaining {
            let t = if positive {
                min_positive_teaching_set(class, c, &remaining)?
            } else {
                Some(min_teaching_set(class, c, &remaining)?)
            };
            round.push((c, t));
        }
        // A finite class always has an inclusion-maximal concept, which has a
        // positive teaching set against the rest.
        let min = round
            .iter()
            .filter_map(|(_, t)| t.as_ref().map(Sample::len))
            .min()
            .expect("some concept is inclusion-maximal");
        order = order.max(min);
        let mut layer = Vec::new();
        for (c, t) in round {
            if let Some(t) = t.filter(|t| t.len() == min) {
                sets[c] = t;
                layer.push(c);
            }
        }
        remaining.retain(|c| !layer.contains(c));
        layers.push(layer);
    }
    Ok(DimensionReport {
        value: Dim::Finite(order),
        witness: Witness::Sequence { layers, sets },
        method: if positive { "rtd_plus_greedy" } else { "rtd_greedy" }.into(),
    })
}

/// RTD by the canonical greedy plan: each round removes every concept whose
/// teaching dimension w.r.t. the remaining class is minimal.
pub fn rtd(class: &FiniteClass) -> Result<DimensionReport> {
    greedy_sequence(class, false)
}

/// RTD⁺: the greedy plan with positive teaching sets.
pub fn rtd_plus(class: &FiniteClass) -> Result<DimensionReport> {
    greedy_sequence(class, true)
}

/// Memoized `TD(L, S)` (or its positive variant) for subclasses `S` given as
/// bit masks over concept indices.
struct SubclassTd<'a> {
    class: &'a FiniteClass,
    positive: bool,
    cache: HashMap<(usize, u64), Option<Sample>>,
}

impl<'a> SubclassTd<'a> {
    fn new(class: &'a FiniteClass, positive: bool) -> Self {
        SubclassTd {
            class,
            positive,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, target: usize, mask: u64) -> Result<Option<Sample>> {
        if let Some(t) = self.cache.get(&(target, mask)) {
            return Ok(t.clone());
        }
        let members: Vec<usize> = members_of(mask).collect();
        let t = if self.positive {
            min_positive_teaching_set(self.class, target, &members)?
        } else {
            Some(min_teaching_set(self.class, target, &members)?)
        };
        self.cache.insert((target, mask), t.clone());
        Ok(t)
    }

    fn dim(&mut self, target: usize, mask: u64) -> Result<Dim> {
        Ok(self.get(target, mask)?.map_or(Dim::Infinite, |t| Dim::Finite(t.len())))
    }
}

fn order_search(class: &FiniteClass, positive: bool, budget: &Budget) -> Result<DimensionReport> {
    class.require_nonempty()?;
    let n = class.len();
    if n > budget.max_order_concepts || n > 63 {
        return Err(Error::resource(format!(
            "{n} concepts exceed the order-search budget of {}; use rtd, which equals PBTD on finite classes",
            budget.max_order_concepts
        )));
    }
    let mut td = SubclassTd::new(class, positive);
    let full = (1u64 << n) - 1;
    // best[S] = (value over orders of S, concept least preferred in S)
    let mut best: Vec<(Dim, usize)> = vec![(Dim::Finite(0), usize::MAX); 1 << n];
    for mask in 1..=full {
        if mask & 0xff == 0 {
            budget.check_time()?;
        }
        let mut choice = (Dim::Infinite, usize::MAX);
        for c in members_of(mask) {
            let here = td.dim(c, mask)?;
            let rest = best[(mask & !(1 << c)) as usize].0;
            let v = here.max(rest);
            if v < choice.0 || choice.1 == usize::MAX {
                choice = (v, c);
            }
        }
        best[mask as usize] = choice;
    }
    let mut least_first = Vec::with_capacity(n);
    let mut sets = vec![Sample::empty(); n];
    let mut mask = full;
    while mask != 0 {
        let c = best[mask as usize].1;
        if let Some(t) = td.get(c, mask)? {
            sets[c] = t;
        }
        least_first.push(c);
        mask &= !(1 << c);
    }
    least_first.reverse();
    Ok(DimensionReport {
        value: best[full as usize].0,
        witness: Witness::Order {
            preferred_first: least_first,
            sets,
        },
        method: if positive { "pbtd_plus_order_search" } else { "pbtd_order_search" }.into(),
    })
}

/// PBTD of a finite class: the minimum over all linear preference orders of the
/// largest teaching set each concept needs against the concepts preferred over it.
///
/// Implemented as a dynamic program over subclasses, which visits every linear
/// order implicitly.
pub fn pbtd_bruteforce(class: &FiniteClass, budget: &Budget) -> Result<DimensionReport> {
    order_search(class, false, budget)
}

pub fn pbtd_plus_bruteforce(class: &FiniteClass, budget: &Budget) -> Result<DimensionReport> {
    order_search(class, true, budget)
}

fn sequence_search(class: &FiniteClass, positive: bool, budget: &Budget) -> Result<Dim> {
    class.require_nonempty()?;
    let n = class.len();
    if n > budget.max_sequence_concepts || n > 63 {
        return Err(Error::resource(format!(
            "{n} concepts exceed the sequence-enumeration budget of {}",
            budget.max_sequence_concepts
        )));
    }
    let mut td = SubclassTd::new(class, positive);
    let full = (1u64 << n) - 1;
    let mut best = vec![Dim::Finite(0); 1 << n];
    for rem in 1..=full {
        budget.check_time()?;
        let dims: Vec<(usize, Dim)> = members_of(rem)
            .map(|c| td.dim(c, rem).map(|d| (c, d)))
            .collect::<Result<_>>()?;
        let mut value = Dim::Infinite;
        // every non-empty first layer `layer ⊆ rem`
        let mut layer = rem;
        while layer != 0 {
            let first = dims
                .iter()
                .filter(|(c, _)| layer >> c & 1 == 1)
                .map(|(_, d)| *d)
                .max()
                .unwrap_or(Dim::Finite(0));
            value = value.min(first.max(best[(rem & !layer) as usize]));
            layer = (layer - 1) & rem;
        }
        best[rem as usize] = value;
    }
    Ok(best[full as usize])
}

/// RTD by enumerating every teaching sequence (ordered partition into layers).
pub fn rtd_bruteforce(class: &FiniteClass, budget: &Budget) -> Result<Dim> {
    sequence_search(class, false, budget)
}

pub fn rtd_plus_bruteforce(class: &FiniteClass, budget: &Budget) -> Result<Dim> {
    sequence_search(class, true, budget)
}

/// Smallest teaching set size by trying every element subset in order of size.
pub fn brute_force_td(class: &FiniteClass, target: usize, members: &[usize]) -> Result<usize> {
    class.require_index(target)?;
    let n = class.universe().size();
    if n > 24 {
        return Err(Error::resource("brute-force TD limited to universes of 24 elements"));
    }
    let l = class.concept(target);
    let others: Vec<_> = members.iter().filter(|&&j| j != target).map(|&j| class.concept(j)).collect();
    let separates = |m: u32| {
        others
            .iter()
            .all(|o| (0..n).any(|x| m >> x & 1 == 1 && o.contains(x) != l.contains(x)))
    };
    for size in 0..=n {
        if subsets_of_size(n, size).any(&separates) {
            return Ok(size);
        }
    }
    unreachable!("the full universe separates distinct concepts")
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{Concept, LabeledExample, Universe};

    fn powerset(k: usize) -> FiniteClass {
        FiniteClass::from_masks(k, &(0..1u64 << k).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn powerset_needs_every_label() {
        let p = powerset(3);
        for i in 0..p.len() {
            assert_eq!(teaching_dimension(&p, i).unwrap(), 3);
        }
    }

    #[test]
    fn singleton_class_has_zero() {
        let c = FiniteClass::from_masks(2, &[1]).unwrap();
        assert_eq!(teaching_dimension(&c, 0).unwrap(), 0);
        assert_eq!(td(&c).unwrap(), 0);
        assert_eq!(rtd(&c).unwrap().value, Dim::Finite(0));
    }

    #[test]
    fn empty_class_rejected() {
        let c = FiniteClass::unnamed(Universe::range1(2), vec![]).unwrap();
        assert!(td_min(&c).is_err());
        assert!(teaching_dimension(&c, 0).is_err());
    }

    #[test]
    fn k_choose_two_of_four() {
        let masks: Vec<u64> = (0..16u64).filter(|m| m.count_ones() == 2).collect();
        let c = FiniteClass::from_masks(4, &masks).unwrap();
        assert_eq!(td_min(&c).unwrap(), 2);
    }

    #[test]
    fn positive_teaching_dimension_examples() {
        let c = FiniteClass::from_masks(1, &[0, 1]).unwrap();
        assert_eq!(positive_teaching_dimension(&c, 1).unwrap(), Dim::Finite(1));
        let c = FiniteClass::from_masks(2, &[0b01, 0b11]).unwrap();
        assert_eq!(positive_teaching_dimension(&c, 0).unwrap(), Dim::Infinite);
        let c = FiniteClass::from_masks(3, &[1, 2, 4]).unwrap();
        for i in 0..3 {
            assert_eq!(positive_teaching_dimension(&c, i).unwrap(), Dim::Finite(1));
        }
    }

    #[test]
    fn rtd_examples() {
        let singles = FiniteClass::from_masks(3, &[1, 2, 4]).unwrap();
        assert_eq!(rtd(&singles).unwrap().value, Dim::Finite(1));
        let p = powerset(3);
        assert_eq!(rtd(&p).unwrap().value, Dim::Finite(3));
        assert_eq!(rtd_bruteforce(&p, &Budget { max_sequence_concepts: 8, ..Budget::default() }).unwrap(), Dim::Finite(3));
    }

    #[test]
    fn pbtd_examples() {
        let b = Budget::default();
        assert_eq!(pbtd_bruteforce(&powerset(2), &b).unwrap().value, Dim::Finite(2));
        let chain = FiniteClass::from_masks(2, &[0b00, 0b01, 0b11]).unwrap();
        let r = pbtd_bruteforce(&chain, &b).unwrap();
        assert_eq!(r.value, Dim::Finite(1));
        assert_eq!(pbtd_plus_bruteforce(&chain, &b).unwrap().value, Dim::Finite(1));
    }

    #[test]
    fn order_search_budget() {
        let p = powerset(4);
        assert!(matches!(pbtd_bruteforce(&p, &Budget::default()), Err(Error::Resource(_))));
    }

    #[test]
    fn teaching_sets_are_labeled_by_target() {
        let c = FiniteClass::from_masks(2, &[0b01, 0b10]).unwrap();
        let t = min_teaching_set(&c, 0, &[0, 1]).unwrap();
        assert_eq!(t, Sample::new([LabeledExample::positive(0)]).unwrap());
        let _ = Concept::empty(0);
    }

    #[test]
    fn dim_json() {
        assert_eq!(serde_json::to_string(&Dim::Infinite).unwrap(), "\"INFINITE\"");
        assert_eq!(serde_json::from_str::<Dim>("4").unwrap(), Dim::Finite(4));
    }
}
