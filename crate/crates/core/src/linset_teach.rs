//! Teacher/student pairs for linear sets, their shift extensions, and
//! closed half-intervals of `[0, 1)`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::class::{Concept, FiniteClass, Sample, Universe};
use crate::error::{Error, Result};
use crate::numsg::{reduce_prefix, GeneratorSet, LinearSetRep, Residues, Variant};
use crate::rational::{format_rational, Q};

/// Positive examples for a linear-set concept, sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinsetSample(Vec<u64>);

impl LinsetSample {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        values.dedup();
        LinsetSample(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }
}

/// ⟨g⟩ is taught by its independent generators.
pub fn teach_linset(g: &GeneratorSet, k: usize) -> Result<LinsetSample> {
    let (gstar, _) = reduce_prefix(g);
    if gstar.len() > k {
        return Err(Error::arg(format!(
            "⟨{g}⟩ has {} independent generators, more than k = {k}",
            gstar.len()
        )));
    }
    Ok(LinsetSample::new(gstar.as_slice().to_vec()))
}

/// The smallest linear set containing the sample: ⟨s⟩ in canonical form.
pub fn student_linset(s: &LinsetSample, k: usize) -> Result<LinearSetRep> {
    let gens: Vec<u64> = s.values().iter().copied().filter(|&x| x > 0).collect();
    if gens.is_empty() {
        return Err(Error::decode("a linear-set sample needs a positive value"));
    }
    let rep = LinearSetRep::linear(&GeneratorSet::new(gens)?);
    if rep.gstar.len() > k {
        return Err(Error::decode(format!(
            "the sample spans a linear set with {} independent generators, more than k = {k}",
            rep.gstar.len()
        )));
    }
    Ok(rep)
}

/// Sort key of the non-erasing preference: larger generator sum first; on
/// equal sums the first differing independent generator decides (larger
/// wins) and a proper prefix beats its extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NePreferenceKey {
    pub sumg: u64,
    pub tupleg: Vec<u64>,
}

impl NePreferenceKey {
    pub fn of(g: &GeneratorSet) -> Self {
        NePreferenceKey {
            sumg: g.sum(),
            tupleg: reduce_prefix(g).1,
        }
    }
}

impl Ord for NePreferenceKey {
    /// `Greater` means more preferred.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sumg.cmp(&other.sumg).then_with(|| {
            match self.tupleg.iter().zip(&other.tupleg).find(|(a, b)| a != b) {
                Some((a, b)) => a.cmp(b),
                None => other.tupleg.len().cmp(&self.tupleg.len()),
            }
        })
    }
}

impl PartialOrd for NePreferenceKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NePreference {
    First,
    Second,
    EqualKey,
}

pub fn ne_prefer(g1: &GeneratorSet, g2: &GeneratorSet) -> NePreference {
    match NePreferenceKey::of(g1).cmp(&NePreferenceKey::of(g2)) {
        Ordering::Greater => NePreference::First,
        Ordering::Less => NePreference::Second,
        Ordering::Equal => NePreference::EqualKey,
    }
}

/// `{g, g+g₁*, …, g+g_h*}` with `g = ΣG`, `h = ℓ*−1` if `G* = G` and `h = ℓ*` otherwise.
pub fn teach_nelinset(g: &GeneratorSet) -> LinsetSample {
    let sum = g.sum();
    let (gstar, tuple) = reduce_prefix(g);
    let h = if gstar == *g { tuple.len() - 1 } else { tuple.len() };
    LinsetSample::new(std::iter::once(sum).chain(tuple[..h].iter().map(|x| sum + x)).collect())
}

/// Decodes to the most preferred `⟨Ĝ⟩₊` (with `|Ĝ| ≤ k`) containing the sample.
pub fn student_nelinset(s: &LinsetSample, k: usize) -> Result<LinearSetRep> {
    student_nelinset_generators(s, k).map(|g| LinearSetRep::non_erasing(&g))
}

/// The generator set picked by [`student_nelinset`]; ties in the preference
/// key go to the lexicographically smallest set.
pub fn student_nelinset_generators(s: &LinsetSample, k: usize) -> Result<GeneratorSet> {
    let g = s.min().ok_or_else(|| Error::decode("empty sample"))?;
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    // ⟨Ĝ⟩₊ starts at ΣĜ, so only sums up to g can be consistent; the larger
    // sum is always preferred.
    for sum in (1..=g).rev() {
        let mut best: Option<(NePreferenceKey, Vec<u64>)> = None;
        let mut cur = Vec::new();
        distinct_parts(sum, g, k, &mut cur, &mut |parts| {
            let res = Residues::new(parts);
            if s.values().iter().all(|&x| x >= sum && res.contains(x - sum)) {
                let mut sorted = parts.to_vec();
                sorted.sort_unstable();
                let key = NePreferenceKey {
                    sumg: sum,
                    tupleg: reduce_prefix(&GeneratorSet::new(sorted.clone()).expect("positive parts")).1,
                };
                let better = match &best {
                    None => true,
                    Some((bk, bset)) => match key.cmp(bk) {
                        Ordering::Greater => true,
                        Ordering::Equal => sorted < *bset,
                        Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((key, sorted));
                }
            }
        });
        if let Some((_, set)) = best {
            return GeneratorSet::new(set);
        }
    }
    Err(Error::decode(format!("no non-erasing linear set with ≤ {k} generators contains the sample")))
}

/// Calls `f` on every set of at most `k` distinct positive integers, each at
/// most `max`, summing to `rest`. Parts are produced in decreasing order.
fn distinct_parts(rest: u64, max: u64, k: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if rest == 0 {
        if !cur.is_empty() {
            f(cur);
        }
        return;
    }
    if k == 0 {
        return;
    }
    let mut p = max.min(rest);
    while p >= 1 {
        // the remaining k−1 parts are distinct and below p
        let cap = (k as u64 - 1).min(p - 1);
        let most = p + cap * (2 * (p - 1) - cap + 1) / 2;
        if most < rest {
            break;
        }
        cur.push(p);
        distinct_parts(rest - p, p - 1, k - 1, cur, f);
        cur.pop();
        p -= 1;
    }
}

/// A teacher/student pair for a class of linear sets.
pub trait LinsetProtocol {
    fn teach(&self, l: &LinearSetRep) -> Result<LinsetSample>;
    fn decode(&self, s: &LinsetSample) -> Result<LinearSetRep>;
}

/// LINSET_k: every concept contains 0.
#[derive(Debug, Clone, Copy)]
pub struct Linset {
    pub k: usize,
}

impl LinsetProtocol for Linset {
    fn teach(&self, l: &LinearSetRep) -> Result<LinsetSample> {
        if l.offset() != 0 || l.gstar.is_empty() {
            return Err(Error::arg(format!("{l} is not a linear set ⟨G⟩")));
        }
        teach_linset(&GeneratorSet::new(l.gstar.clone())?, self.k)
    }

    fn decode(&self, s: &LinsetSample) -> Result<LinearSetRep> {
        student_linset(s, self.k)
    }
}

/// NELINSET_k, taught through generator sets.
#[derive(Debug, Clone, Copy)]
pub struct Nelinset {
    pub k: usize,
}

impl Nelinset {
    pub fn teach_generators(&self, g: &GeneratorSet) -> Result<LinsetSample> {
        if g.len() > self.k {
            return Err(Error::arg(format!("{g} has more than k = {} generators", self.k)));
        }
        Ok(teach_nelinset(g))
    }
}

impl LinsetProtocol for Nelinset {
    /// A representation only keeps `G*` and `ΣG`; the teacher picks the
    /// lexicographically smallest generator set with both.
    fn teach(&self, l: &LinearSetRep) -> Result<LinsetSample> {
        if l.variant != Variant::NonErasing || l.shift != 0 {
            return Err(Error::arg(format!("{l} is not given as ⟨G⟩₊")));
        }
        let mut found: Option<Vec<u64>> = None;
        distinct_parts(l.ne_sum, l.ne_sum, self.k, &mut Vec::new(), &mut |parts| {
            let mut sorted = parts.to_vec();
            sorted.sort_unstable();
            let g = GeneratorSet::new(sorted.clone()).expect("positive parts");
            if reduce_prefix(&g).1 == l.gstar && found.as_ref().is_none_or(|f| sorted < *f) {
                found = Some(sorted);
            }
        });
        let g = found.ok_or_else(|| Error::arg(format!("{l} is not in NELINSET_{}", self.k)))?;
        self.teach_generators(&GeneratorSet::new(g)?)
    }

    fn decode(&self, s: &LinsetSample) -> Result<LinearSetRep> {
        student_nelinset(s, self.k)
    }
}

/// `T'(c + L) = {c} ∪ {c + x : x ∈ T(L)}`; requires `0 ∈ L`.
pub fn shift_teach(c: u64, inner: &dyn LinsetProtocol, l: &LinearSetRep) -> Result<LinsetSample> {
    if !l.contains(0) {
        return Err(Error::arg(format!("{l} does not contain 0, so it cannot be shifted")));
    }
    let t = inner.teach(l)?;
    Ok(LinsetSample::new(
        std::iter::once(c).chain(t.values().iter().map(|x| c + x)).collect(),
    ))
}

/// Reads the shift as the least value, decodes the rest, and shifts back.
pub fn shift_student(s: &LinsetSample, inner: &dyn LinsetProtocol) -> Result<LinearSetRep> {
    let c = s.min().ok_or_else(|| Error::decode("empty sample"))?;
    let rest = LinsetSample::new(s.values()[1..].iter().map(|x| x - c).collect());
    let l = inner.decode(&rest)?;
    if !l.contains(0) {
        return Err(Error::decode("inner student returned a concept without 0"));
    }
    Ok(l.shifted(c))
}

/// Teaches `c + ⟨G⟩₊ = (c + ΣG) + ⟨G⟩` as a member of the shifted LINSET class.
pub fn teach_shifted_nelinset(c: u64, g: &GeneratorSet, k: usize) -> Result<LinsetSample> {
    shift_teach(c + g.sum(), &Linset { k }, &LinearSetRep::linear(g))
}

pub fn student_shifted_nelinset(s: &LinsetSample, k: usize) -> Result<LinearSetRep> {
    shift_student(s, &Linset { k })
}

fn check_unit(a: &Q) -> Result<()> {
    if *a < Q::zero() || *a >= Q::one() {
        return Err(Error::arg(format!("{} is outside [0, 1)", format_rational(a))));
    }
    Ok(())
}

/// `[0, a]` is taught by the single example `(a, +)`.
pub fn teach_halfinterval(a: &Q) -> Result<Vec<Q>> {
    check_unit(a)?;
    Ok(vec![a.clone()])
}

/// Smaller intervals are preferred, so the student returns the largest positive.
pub fn student_halfinterval(positives: &[Q]) -> Result<Q> {
    for p in positives {
        check_unit(p)?;
    }
    positives
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| Error::decode("no positive example"))
}

/// Restricts linear sets to `{0, …, window}` as a finite class named by the sets.
pub fn window_class(reps: &[LinearSetRep], window: u64) -> Result<FiniteClass> {
    let n = window as usize + 1;
    let universe = Universe::numeric(0..=window)?;
    let named = reps
        .iter()
        .map(|r| (r.to_string(), Concept::from_indices(n, r.members_upto(window).into_iter().map(|x| x as usize))))
        .collect();
    FiniteClass::new(universe, named)
}

/// A positive linear-set sample as a sample over a window universe.
pub fn window_sample(s: &LinsetSample, window: u64) -> Result<Sample> {
    if let Some(&x) = s.values().iter().find(|&&x| x > window) {
        return Err(Error::Structural(format!("{x} lies outside the window 0..={window}")));
    }
    Ok(Sample::positive(s.values().iter().map(|&x| x as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsg::linset_equal;
    use crate::rational::q2;

    fn gs(v: &[u64]) -> GeneratorSet {
        GeneratorSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn linset_round_trips() {
        assert_eq!(teach_linset(&gs(&[3, 5]), 2).unwrap().values(), &[3, 5]);
        assert_eq!(teach_linset(&gs(&[2, 4]), 2).unwrap().values(), &[2]);
        assert_eq!(teach_linset(&gs(&[1]), 1).unwrap().values(), &[1]);
        assert!(teach_linset(&gs(&[3, 4, 5]), 2).is_err());
        let back = student_linset(&LinsetSample::new(vec![2]), 2).unwrap();
        assert!(linset_equal(&back, &LinearSetRep::linear(&gs(&[2, 4]))));
    }

    #[test]
    fn preference_conditions() {
        assert_eq!(ne_prefer(&gs(&[3, 5]), &gs(&[3, 4])), NePreference::First);
        assert_eq!(ne_prefer(&gs(&[3, 5]), &gs(&[1, 3, 4])), NePreference::First);
        assert_eq!(ne_prefer(&gs(&[3, 7]), &gs(&[3, 6, 1])), NePreference::First);
        assert_eq!(ne_prefer(&gs(&[3, 6]), &gs(&[2, 3, 4])), NePreference::First);
        // equal sums, (2) is a proper prefix of (2, 3)
        assert_eq!(ne_prefer(&gs(&[2, 4, 6]), &gs(&[2, 3, 7])), NePreference::First);
        assert_eq!(ne_prefer(&gs(&[2, 4, 6]), &gs(&[2, 10])), NePreference::EqualKey);
        assert_eq!(ne_prefer(&gs(&[2, 4, 6]), &gs(&[2, 4, 6])), NePreference::EqualKey);
    }

    #[test]
    fn nelinset_samples() {
        assert_eq!(teach_nelinset(&gs(&[3, 5])).values(), &[8, 11]);
        assert_eq!(teach_nelinset(&gs(&[2, 4, 5])).values(), &[11, 13, 16]);
        assert_eq!(teach_nelinset(&gs(&[4])).values(), &[4]);
    }

    #[test]
    fn nelinset_decoding() {
        let d = student_nelinset(&LinsetSample::new(vec![8, 11]), 2).unwrap();
        assert!(linset_equal(&d, &LinearSetRep::non_erasing(&gs(&[3, 5]))));
        let d = student_nelinset(&LinsetSample::new(vec![11, 13, 16]), 3).unwrap();
        assert!(linset_equal(&d, &LinearSetRep::non_erasing(&gs(&[2, 4, 5]))));
        let d = student_nelinset(&LinsetSample::new(vec![6]), 3).unwrap();
        assert!(linset_equal(&d, &LinearSetRep::non_erasing(&gs(&[6]))));
    }

    #[test]
    fn nelinset_protocol_from_representation() {
        let p = Nelinset { k: 3 };
        let l = LinearSetRep::non_erasing(&gs(&[2, 4, 5]));
        let s = p.teach(&l).unwrap();
        assert!(linset_equal(&p.decode(&s).unwrap(), &l));
    }

    #[test]
    fn shifting() {
        let inner = Linset { k: 2 };
        let l = LinearSetRep::linear(&gs(&[2]));
        let s = shift_teach(3, &inner, &l).unwrap();
        assert_eq!(s.values(), &[3, 5]);
        assert!(linset_equal(&shift_student(&s, &inner).unwrap(), &l.clone().shifted(3)));
        assert_eq!(shift_teach(0, &inner, &l).unwrap().values(), &[0, 2]);
        let ne = LinearSetRep::non_erasing(&gs(&[2]));
        assert!(shift_teach(1, &Nelinset { k: 1 }, &ne).is_err());

        let s = teach_shifted_nelinset(4, &gs(&[3, 5]), 2).unwrap();
        assert_eq!(s.values(), &[12, 15, 17]);
        let back = student_shifted_nelinset(&s, 2).unwrap();
        assert!(linset_equal(&back, &LinearSetRep::non_erasing(&gs(&[3, 5])).shifted(4)));
    }

    #[test]
    fn half_intervals() {
        let a = q2(1, 3);
        assert_eq!(teach_halfinterval(&a).unwrap(), vec![a.clone()]);
        assert_eq!(student_halfinterval(&[q2(1, 4), q2(1, 3)]).unwrap(), a);
        assert_eq!(student_halfinterval(&teach_halfinterval(&Q::zero()).unwrap()).unwrap(), Q::zero());
        assert!(student_halfinterval(&[]).is_err());
        assert!(teach_halfinterval(&Q::one()).is_err());
    }

    #[test]
    fn distinct_partitions() {
        let mut all = Vec::new();
        distinct_parts(6, 6, 3, &mut Vec::new(), &mut |p| all.push(p.to_vec()));
        assert_eq!(all, vec![vec![6], vec![5, 1], vec![4, 2], vec![3, 2, 1]]);
    }
}
