//! Teaching maps, the relation they induce, and preference relations.
//!
//! A pair `(a, b)` in R_T means concept `a` is consistent with `T(b)`, so `b`
//! has to be preferred over `a` for `T(b)` to teach `b`. We write `a ≺ b`.

use fixedbitset::FixedBitSet;

use crate::class::{is_consistent, FiniteClass, LabeledExample, Sample};
use crate::digraph::{find_cycle, topological_order};
use crate::error::{Error, Result};

/// An assignment of one sample per concept, indexed like the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeachingMap {
    samples: Vec<Sample>,
}

impl TeachingMap {
    pub fn new(class: &FiniteClass, samples: Vec<Sample>) -> Result<Self> {
        if samples.len() != class.len() {
            return Err(Error::Structural(format!(
                "teaching map has {} samples for {} concepts",
                samples.len(),
                class.len()
            )));
        }
        let n = class.universe().size();
        for (i, t) in samples.iter().enumerate() {
            if let Some(x) = t.max_element().filter(|&x| x >= n) {
                return Err(Error::Structural(format!(
                    "sample of concept {i} uses element {x} outside a universe of size {n}"
                )));
            }
        }
        Ok(TeachingMap { samples })
    }

    pub fn sample(&self, concept: usize) -> &Sample {
        &self.samples[concept]
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted: Vec<&Sample> = self.samples.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn order(&self) -> usize {
        self.samples.iter().map(Sample::len).max().unwrap_or(0)
    }
}

/// All pairs `(a, b)`, `a ≠ b`, with `a` consistent with `T(b)`.
pub fn build_relation(tm: &TeachingMap, class: &FiniteClass) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for b in 0..class.len() {
        for a in 0..class.len() {
            if a != b && tm.sample(b).iter().all(|ex| ex.agrees_with(class.concept(a))) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// A concept disagrees with an example of its own sample.
    Inconsistent { concept: usize, example: LabeledExample },
    /// Concepts `c0 ≺ c1 ≺ … ≺ c0` forced by the map.
    Cycle(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible(PreferenceRelation),
    Rejected(Rejection),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible(_))
    }
}

pub fn check_admissible(tm: &TeachingMap, class: &FiniteClass) -> Result<Admissibility> {
    if tm.samples().len() != class.len() {
        return Err(Error::Structural("teaching map does not cover the class".into()));
    }
    for c in 0..class.len() {
        if let Some(ex) = tm.sample(c).iter().find(|ex| !ex.agrees_with(class.concept(c))) {
            return Ok(Admissibility::Rejected(Rejection::Inconsistent {
                concept: c,
                example: *ex,
            }));
        }
    }
    let pairs = build_relation(tm, class);
    Ok(match PreferenceRelation::from_pairs(class.len(), &pairs) {
        Ok(p) => Admissibility::Admissible(p),
        Err(cycle) => Admissibility::Rejected(Rejection::Cycle(cycle)),
    })
}

/// A strict partial order on concept indices, stored as its transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceRelation {
    /// `below[b]` holds every `a` with `a ≺ b`.
    below: Vec<FixedBitSet>,
}

impl PreferenceRelation {
    /// The empty order: nothing is preferred over anything.
    pub fn empty(n: usize) -> Self {
        PreferenceRelation {
            below: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Transitive closure of `pairs` (`(a, b)` meaning `a ≺ b`), or a cycle.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> std::result::Result<Self, Vec<usize>> {
        let mut up = vec![Vec::new(); n];
        for &(a, b) in pairs {
            up[a].push(b);
        }
        if let Some(cycle) = find_cycle(&up) {
            return Err(cycle);
        }
        // Process so that every concept comes after everything below it.
        let order = topological_order(&up).expect("checked acyclic");
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in pairs {
            down[b].push(a);
        }
        for &b in &order {
            let mut acc = FixedBitSet::with_capacity(n);
            for &a in &down[b] {
                acc.insert(a);
                acc.union_with(&below[a]);
            }
            below[b] = acc;
        }
        Ok(PreferenceRelation { below })
    }

    /// A linear order given most preferred first.
    pub fn linear(preferred_first: &[usize]) -> Result<Self> {
        let n = preferred_first.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (pos, &c) in preferred_first.iter().enumerate().rev() {
            if c >= n || seen.contains(c) {
                return Err(Error::arg("linear order must be a permutation of the concepts"));
            }
            seen.insert(c);
            for &a in &preferred_first[pos + 1..] {
                below[c].insert(a);
            }
        }
        Ok(PreferenceRelation { below })
    }

    /// Proper supersets are less preferred: the student picks a minimal
    /// consistent concept.
    pub fn smaller_preferred(class: &FiniteClass) -> Self {
        let n = class.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (b, row) in below.iter_mut().enumerate() {
            for a in 0..n {
                if class.concept(b).is_proper_subset(class.concept(a)) {
                    row.insert(a);
                }
            }
        }
        PreferenceRelation { below }
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// `a ≺ b`
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// The covering pairs `(a, b)`: `a ≺ b` with nothing strictly between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            for a in self.below[b].ones() {
                if !self.below[b].ones().any(|m| self.below[m].contains(a)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Whether `t` teaches concept `target` of `class` under `pref`: the target is
/// consistent and every other consistent concept lies strictly below it.
pub fn verify_teaching_set(
    target: usize,
    class: &FiniteClass,
    pref: &PreferenceRelation,
    t: &Sample,
) -> Result<bool> {
    class.require_index(target)?;
    if pref.len() != class.len() {
        return Err(Error::Structural("preference relation does not match the class".into()));
    }
    if !is_consistent(class.concept(target), t)? {
        return Ok(false);
    }
    for other in 0..class.len() {
        if other != target && is_consistent(class.concept(other), t)? && !pref.is_below(other, target) {
            return Ok(false);
        }
    }
    Ok(true)
}
