//! Classes of preference-based teaching dimension one: symmetric-difference
//! transforms, triangular choosers for positive teaching, exact decision
//! procedures, and the structural test for classes containing all singletons.

use fixedbitset::FixedBitSet;
use serde_json::{json, Map, Value};

use crate::admissible::PreferenceRelation;
use crate::class::{Concept, FiniteClass, LabeledExample, Sample, Sign};
use crate::digraph::{find_cycle, topological_order};
use crate::dims::Budget;
use crate::error::{Error, Result};

/// A set `M` of universe elements; `M ⊕ L = (L ∖ M) ∪ (M ∖ L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipMask {
    mask: FixedBitSet,
}

impl FlipMask {
    pub fn new<I: IntoIterator<Item = usize>>(universe_size: usize, elements: I) -> Result<Self> {
        let mut mask = FixedBitSet::with_capacity(universe_size);
        for x in elements {
            if x >= universe_size {
                return Err(Error::Structural(format!("mask element {x} outside the universe")));
            }
            mask.insert(x);
        }
        Ok(FlipMask { mask })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.mask.len() != n {
            return Err(Error::Structural(format!(
                "mask over {} elements applied to a universe of {n}",
                self.mask.len()
            )));
        }
        Ok(())
    }
}

pub fn flip_concept(m: &FlipMask, l: &Concept) -> Result<Concept> {
    m.check(l.universe_size())?;
    Ok(l.symmetric_difference(&m.mask))
}

pub fn flip_sample(m: &FlipMask, t: &Sample) -> Sample {
    Sample::new(t.iter().map(|e| {
        let sign = if m.contains(e.element) { e.sign.flipped() } else { e.sign };
        LabeledExample::new(e.element, sign)
    }))
    .expect("flipping preserves distinct elements")
}

pub fn flip_class(m: &FlipMask, class: &FiniteClass) -> Result<FiniteClass> {
    let named = (0..class.len())
        .map(|i| Ok((class.name(i).to_string(), flip_concept(m, class.concept(i))?)))
        .collect::<Result<Vec<_>>>()?;
    FiniteClass::new(class.universe().clone(), named)
}

/// A chooser `L ↦ x_L ∈ L` on the non-empty concepts and an order in which
/// no concept contains the chosen element of an earlier one. Listed least
/// preferred first: `{x_L}` teaches `L` because every other concept containing
/// `x_L` comes before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularWitness {
    pub order: Vec<usize>,
    /// `chooser[c]` is `None` exactly for the empty concept.
    pub chooser: Vec<Option<usize>>,
}

impl TriangularWitness {
    /// Most preferred first, with the empty concept (if any) on top.
    pub fn preferred_first(&self) -> Vec<usize> {
        let empty = (0..self.chooser.len()).filter(|&c| self.chooser[c].is_none());
        empty.chain(self.order.iter().rev().copied()).collect()
    }

    pub fn samples(&self) -> Vec<Sample> {
        self.chooser
            .iter()
            .map(|x| x.map_or_else(Sample::empty, |x| Sample::positive([x])))
            .collect()
    }

    pub fn to_json(&self, class: &FiniteClass) -> Value {
        let mut chooser = Map::new();
        let mut labels = Map::new();
        for c in self.preferred_first() {
            if let Some(x) = self.chooser[c] {
                chooser.insert(class.name(c).into(), class.universe().label(x).into());
                labels.insert(class.name(c).into(), "+".into());
            }
        }
        json!({
            "order": self.preferred_first().iter().map(|&c| class.name(c)).collect::<Vec<_>>(),
            "chooser": chooser,
            "labels": labels,
        })
    }
}

/// Edge `a → b` whenever `a` contains `x_b`; a topological order of this graph
/// is a triangular order. Fails with a cycle of concept indices.
pub fn is_lower_triangularizable(
    class: &FiniteClass,
    chooser: &[Option<usize>],
) -> Result<std::result::Result<TriangularWitness, Vec<usize>>> {
    if chooser.len() != class.len() {
        return Err(Error::Structural("chooser does not cover the class".into()));
    }
    for (c, x) in chooser.iter().enumerate() {
        let l = class.concept(c);
        match x {
            Some(x) if *x < l.universe_size() && l.contains(*x) => {}
            None if l.is_empty() => {}
            Some(x) => {
                return Err(Error::arg(format!(
                    "chosen element {x} is not in concept {}",
                    class.name(c)
                )))
            }
            None => return Err(Error::arg(format!("no element chosen for {}", class.name(c)))),
        }
    }
    let adj = chooser_graph(class, chooser);
    let nonempty: Vec<usize> = (0..class.len()).filter(|&c| chooser[c].is_some()).collect();
    Ok(match topological_order(&adj) {
        Ok(order) => Ok(TriangularWitness {
            order: order.into_iter().filter(|c| nonempty.contains(c)).collect(),
            chooser: chooser.to_vec(),
        }),
        Err(cycle) => Err(cycle),
    })
}

fn chooser_graph(class: &FiniteClass, chooser: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); class.len()];
    for (b, x) in chooser.iter().enumerate() {
        if let Some(x) = x {
            for (a, out) in adj.iter_mut().enumerate() {
                if a != b && class.concept(a).contains(*x) {
                    out.push(b);
                }
            }
        }
    }
    adj
}

/// Concepts ascending by cardinality, then index.
fn search_order(class: &FiniteClass) -> Vec<usize> {
    let mut order: Vec<usize> = (0..class.len()).collect();
    order.sort_by_key(|&c| (class.concept(c).cardinality(), c));
    order
}

struct Nodes<'a> {
    budget: &'a Budget,
    used: u64,
}

impl Nodes<'_> {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.max_search_nodes {
            return Err(Error::resource("backtracking search exceeded its node budget"));
        }
        if self.used.is_multiple_of(1024) {
            self.budget.check_time()?;
        }
        Ok(())
    }
}

/// A chooser making the class triangular, i.e. a witness that
/// `PBTD⁺ ≤ 1`, or `None` if there is none.
pub fn decide_pbtd_plus_1(class: &FiniteClass, budget: &Budget) -> Result<Option<TriangularWitness>> {
    let order: Vec<usize> = search_order(class)
        .into_iter()
        .filter(|&c| !class.concept(c).is_empty())
        .collect();
    let mut adj = vec![Vec::new(); class.len()];
    let mut chooser = vec![None; class.len()];
    let mut nodes = Nodes { budget, used: 0 };
    if !plus_search(class, &order, 0, &mut adj, &mut chooser, &mut nodes)? {
        return Ok(None);
    }
    Ok(is_lower_triangularizable(class, &chooser)?.ok())
}

fn plus_search(
    class: &FiniteClass,
    order: &[usize],
    depth: usize,
    adj: &mut Vec<Vec<usize>>,
    chooser: &mut Vec<Option<usize>>,
    nodes: &mut Nodes,
) -> Result<bool> {
    let Some(&b) = order.get(depth) else {
        return Ok(true);
    };
    let members: Vec<usize> = class.concept(b).members().collect();
    for x in members {
        nodes.tick()?;
        let added: Vec<usize> = (0..class.len())
            .filter(|&a| a != b && class.concept(a).contains(x))
            .collect();
        for &a in &added {
            adj[a].push(b);
        }
        chooser[b] = Some(x);
        if find_cycle(adj).is_none() && plus_search(class, order, depth + 1, adj, chooser, nodes)? {
            return Ok(true);
        }
        chooser[b] = None;
        for &a in &added {
            adj[a].pop();
        }
    }
    Ok(false)
}

/// An admissible teaching map of order at most one, with its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pbtd1Witness {
    pub preferred_first: Vec<usize>,
    /// Empty or a single example per concept.
    pub samples: Vec<Sample>,
}

impl Pbtd1Witness {
    pub fn to_json(&self, class: &FiniteClass) -> Value {
        let mut chooser = Map::new();
        let mut labels = Map::new();
        for &c in &self.preferred_first {
            if let Some(e) = self.samples[c].iter().next() {
                chooser.insert(class.name(c).into(), class.universe().label(e.element).into());
                labels.insert(class.name(c).into(), e.sign.to_string().into());
            }
        }
        json!({
            "order": self.preferred_first.iter().map(|&c| class.name(c)).collect::<Vec<_>>(),
            "chooser": chooser,
            "labels": labels,
        })
    }

    pub fn preference(&self) -> PreferenceRelation {
        PreferenceRelation::linear(&self.preferred_first).expect("witness order is a permutation")
    }
}

/// Decides `PBTD ≤ 1` by searching single-example assignments `(x_L, L(x_L))`
/// (or the empty sample) whose induced relation stays acyclic.
///
/// At most one element may be used by two concepts, and at most one concept
/// may take the empty sample; both follow from acyclicity and prune early.
pub fn decide_pbtd_1(class: &FiniteClass, budget: &Budget) -> Result<Option<Pbtd1Witness>> {
    class.require_nonempty()?;
    let order = search_order(class);
    let n = class.universe().size();
    let mut st = OneState {
        up: vec![Vec::new(); class.len()],
        samples: vec![None; class.len()],
        uses: vec![0; n],
        doubled: 0,
        empty_used: false,
    };
    let mut nodes = Nodes { budget, used: 0 };
    if !one_search(class, &order, 0, &mut st, &mut nodes)? {
        return Ok(None);
    }
    let samples: Vec<Sample> = st.samples.into_iter().map(|s| s.expect("all assigned")).collect();
    // `up[a]` lists concepts preferred over `a`; reverse for preferred-first.
    let mut down = vec![Vec::new(); class.len()];
    for (a, ups) in st.up.iter().enumerate() {
        for &b in ups {
            down[b].push(a);
        }
    }
    let preferred_first = topological_order(&down).expect("search keeps the relation acyclic");
    Ok(Some(Pbtd1Witness { preferred_first, samples }))
}

struct OneState {
    /// `up[a]` holds every `b` with `a` consistent with `T(b)`, i.e. `a ≺ b`.
    up: Vec<Vec<usize>>,
    samples: Vec<Option<Sample>>,
    uses: Vec<u8>,
    doubled: usize,
    empty_used: bool,
}

fn one_search(class: &FiniteClass, order: &[usize], depth: usize, st: &mut OneState, nodes: &mut Nodes) -> Result<bool> {
    let Some(&b) = order.get(depth) else {
        return Ok(true);
    };
    let l = class.concept(b);
    let n = class.universe().size();
    let candidates = std::iter::once(None).chain((0..n).map(Some));
    for cand in candidates {
        nodes.tick()?;
        let sample = match cand {
            None if st.empty_used => continue,
            None => Sample::empty(),
            Some(x) => {
                if st.uses[x] >= 2 || (st.uses[x] == 1 && st.doubled >= 1) {
                    continue;
                }
                Sample::new([LabeledExample::new(x, Sign::from_bool(l.contains(x)))])?
            }
        };
        let added: Vec<usize> = (0..class.len())
            .filter(|&a| a != b && sample.iter().all(|e| e.agrees_with(class.concept(a))))
            .collect();
        for &a in &added {
            st.up[a].push(b);
        }
        let acyclic = find_cycle(&st.up).is_none();
        if acyclic {
            match cand {
                None => st.empty_used = true,
                Some(x) => {
                    st.uses[x] += 1;
                    if st.uses[x] == 2 {
                        st.doubled += 1;
                    }
                }
            }
            st.samples[b] = Some(sample);
            if one_search(class, order, depth + 1, st, nodes)? {
                return Ok(true);
            }
            st.samples[b] = None;
            match cand {
                None => st.empty_used = false,
                Some(x) => {
                    if st.uses[x] == 2 {
                        st.doubled -= 1;
                    }
                    st.uses[x] -= 1;
                }
            }
        }
        for &a in &added {
            st.up[a].pop();
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingletonExtension {
    PureSingletons,
    PlusEmpty,
    /// One extra concept `{q, q'}` (universe indices, ascending).
    PlusPair(usize, usize),
    NotPbtd1,
    NotApplicable,
}

impl SingletonExtension {
    pub fn is_pbtd1(self) -> Option<bool> {
        match self {
            SingletonExtension::NotApplicable => None,
            SingletonExtension::NotPbtd1 => Some(false),
            _ => Some(true),
        }
    }
}

/// For classes containing every singleton: `PBTD = 1` iff the class has no
/// other concept, or exactly one more which is `∅` or has two elements.
pub fn classify_singleton_extension(class: &FiniteClass) -> SingletonExtension {
    let n = class.universe().size();
    let has_all = (0..n).all(|x| {
        class
            .concepts()
            .iter()
            .any(|c| c.cardinality() == 1 && c.contains(x))
    });
    if n == 0 || !has_all {
        return SingletonExtension::NotApplicable;
    }
    let extra: Vec<&Concept> = class.concepts().iter().filter(|c| c.cardinality() != 1).collect();
    match extra[..] {
        [] => SingletonExtension::PureSingletons,
        [e] if e.is_empty() => SingletonExtension::PlusEmpty,
        [e] if e.cardinality() == 2 => {
            let m: Vec<usize> = e.members().collect();
            SingletonExtension::PlusPair(m[0], m[1])
        }
        _ => SingletonExtension::NotPbtd1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::verify_teaching_set;
    use crate::class::is_consistent;

    fn class(k: usize, masks: &[u64]) -> FiniteClass {
        FiniteClass::from_masks(k, masks).unwrap()
    }

    #[test]
    fn flips() {
        let c = Concept::from_mask(3, 0b011);
        let none = FlipMask::new(3, []).unwrap();
        assert_eq!(flip_concept(&none, &c).unwrap(), c);
        let all = FlipMask::new(3, 0..3).unwrap();
        assert_eq!(flip_concept(&all, &c).unwrap(), Concept::from_mask(3, 0b100));
        let m = FlipMask::new(3, [1]).unwrap();
        let twice = flip_concept(&m, &flip_concept(&m, &c).unwrap()).unwrap();
        assert_eq!(twice, c);
        let t = Sample::new([LabeledExample::positive(1), LabeledExample::negative(2)]).unwrap();
        assert_eq!(flip_sample(&m, &flip_sample(&m, &t)), t);
        assert_eq!(is_consistent(&c, &t).unwrap(), is_consistent(&flip_concept(&m, &c).unwrap(), &flip_sample(&m, &t)).unwrap());
        assert!(flip_concept(&m, &Concept::from_mask(2, 1)).is_err());
    }

    #[test]
    fn triangular_checks() {
        let singles = class(3, &[1, 2, 4]);
        let w = is_lower_triangularizable(&singles, &[Some(0), Some(1), Some(2)]).unwrap().unwrap();
        assert_eq!(w.order.len(), 3);

        // {1} ⊂ {1,2}: choosing 1 for both is a 2-cycle, choosing 2 for {1,2} is fine
        let chain = class(2, &[0b01, 0b11]);
        assert!(is_lower_triangularizable(&chain, &[Some(0), Some(0)]).unwrap().is_err());
        let w = is_lower_triangularizable(&chain, &[Some(0), Some(1)]).unwrap().unwrap();
        assert_eq!(w.order, vec![1, 0]);

        assert!(is_lower_triangularizable(&chain, &[Some(1), Some(1)]).is_err());
    }

    #[test]
    fn positive_decisions() {
        let b = Budget::default();
        let sg_empty = class(3, &[0, 1, 2, 4]);
        let w = decide_pbtd_plus_1(&sg_empty, &b).unwrap().unwrap();
        let pref = PreferenceRelation::linear(&w.preferred_first()).unwrap();
        for (c, t) in w.samples().iter().enumerate() {
            assert!(verify_teaching_set(c, &sg_empty, &pref, t).unwrap());
        }
        assert!(decide_pbtd_plus_1(&class(2, &[0, 1, 2, 3]), &b).unwrap().is_none());
    }

    #[test]
    fn labeled_decisions() {
        let b = Budget::default();
        let chain = class(3, &[0b001, 0b011, 0b111]);
        let w = decide_pbtd_1(&chain, &b).unwrap().unwrap();
        for (c, t) in w.samples.iter().enumerate() {
            assert!(verify_teaching_set(c, &chain, &w.preference(), t).unwrap());
        }
        assert!(decide_pbtd_1(&class(3, &[1, 2, 4, 0, 3]), &b).unwrap().is_none());
        let single = class(2, &[2]);
        let w = decide_pbtd_1(&single, &b).unwrap().unwrap();
        assert!(w.samples[0].is_empty());
    }

    #[test]
    fn singleton_extensions() {
        let sg4 = [1u64, 2, 4, 8];
        assert_eq!(classify_singleton_extension(&class(4, &sg4)), SingletonExtension::PureSingletons);
        let mut plus = sg4.to_vec();
        plus.push(0b0011);
        assert_eq!(classify_singleton_extension(&class(4, &plus)), SingletonExtension::PlusPair(0, 1));
        plus.push(0);
        assert_eq!(classify_singleton_extension(&class(4, &plus)), SingletonExtension::NotPbtd1);
        assert_eq!(classify_singleton_extension(&class(3, &[1, 2])), SingletonExtension::NotApplicable);
    }
}
