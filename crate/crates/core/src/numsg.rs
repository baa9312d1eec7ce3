//! Linear sets over ℕ₀ and numerical semigroups: membership, Apéry residues,
//! Frobenius numbers, independence, special-set certificates, and enumerators
//! for finite families of (shifted) linear sets.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dims::Budget;
use crate::error::{Error, Result};

/// A non-empty set of positive integers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSet(Vec<u64>);

impl GeneratorSet {
    pub fn new(mut gens: Vec<u64>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::arg("generator set must be non-empty"));
        }
        if gens.contains(&0) {
            return Err(Error::arg("generators must be positive"));
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(GeneratorSet(gens))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn smallest(&self) -> u64 {
        self.0[0]
    }

    pub fn largest(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn gcd(&self) -> u64 {
        gcd_all(&self.0)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

pub fn gcd_all(xs: &[u64]) -> u64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Parses `3,5,7` into integers.
pub fn parse_int_list(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>().map_err(|_| Error::parse(format!("bad integer {t:?}")))
        })
        .collect()
}

const DP_LIMIT: u64 = 1 << 22;

/// Membership in ⟨g⟩ by the reachable-sums table over `0..=x`.
///
/// Very large queries fall back to the residue table, which answers the
/// same question by periodicity.
pub fn span_member(g: &GeneratorSet, x: i64) -> Result<bool> {
    if x < 0 {
        return Err(Error::arg(format!("membership query for negative {x}")));
    }
    let x = x as u64;
    if x > DP_LIMIT {
        return Ok(Residues::new(g.as_slice()).contains(x));
    }
    Ok(reachable_sums(g.as_slice(), x)[x as usize])
}

/// `r[y]` is true iff `y ∈ ⟨gens⟩`, for `y ≤ upto`.
fn reachable_sums(gens: &[u64], upto: u64) -> Vec<bool> {
    let mut r = vec![false; upto as usize + 1];
    r[0] = true;
    for y in 1..=upto as usize {
        r[y] = gens.iter().any(|&g| g as usize <= y && r[y - g as usize]);
    }
    r
}

/// Least element of ⟨gens⟩ in each residue class modulo `a = min gens`,
/// by Dijkstra over the residues; `None` for unreachable classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residues {
    a: u64,
    t: Vec<Option<u64>>,
}

impl Residues {
    /// An empty generator list spans only `{0}`.
    pub fn new(gens: &[u64]) -> Self {
        let Some(&a) = gens.iter().min() else {
            return Residues { a: 0, t: Vec::new() };
        };
        let mut t: Vec<Option<u64>> = vec![None; a as usize];
        let mut heap = BinaryHeap::new();
        t[0] = Some(0);
        heap.push(Reverse((0u64, 0u64)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if t[r as usize] != Some(d) {
                continue;
            }
            for &g in gens {
                let nd = d + g;
                let nr = (r + g) % a;
                if t[nr as usize].is_none_or(|old| nd < old) {
                    t[nr as usize] = Some(nd);
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Residues { a, t }
    }

    pub fn contains(&self, x: u64) -> bool {
        if self.a == 0 {
            return x == 0;
        }
        self.t[(x % self.a) as usize].is_some_and(|t| t <= x)
    }

    /// Largest finite residue minimum; beyond it membership has period `a`.
    pub fn t_max_finite(&self) -> u64 {
        self.t.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn modulus(&self) -> u64 {
        self.a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperyTable {
    pub a: u64,
    pub t: Vec<u64>,
    pub t_max: u64,
}

pub fn apery(p: &GeneratorSet) -> Result<AperyTable> {
    let res = Residues::new(p.as_slice());
    let t: Option<Vec<u64>> = res.t.iter().copied().collect();
    let t = t.ok_or_else(|| {
        Error::arg(format!("gcd{p} = {} ≠ 1: some residue class is unreachable", p.gcd()))
    })?;
    let t_max = *t.iter().max().expect("a ≥ 1");
    Ok(AperyTable { a: res.a, t, t_max })
}

/// Largest integer outside ⟨p⟩, or −1 when ⟨p⟩ = ℕ₀. Found by scanning the
/// reachable sums until `min p` consecutive members appear.
pub fn frobenius(p: &GeneratorSet) -> Result<i64> {
    if p.gcd() != 1 {
        return Err(Error::arg(format!("gcd{p} = {} ≠ 1, so ⟨P⟩ is not co-finite", p.gcd())));
    }
    let a = p.smallest();
    if a.saturating_mul(p.largest()) > 1 << 30 {
        return Err(Error::resource("generators too large for the Frobenius scan"));
    }
    let gens = p.as_slice();
    let mut r: Vec<bool> = vec![true];
    let mut last_gap: i64 = -1;
    let mut run = 1u64;
    while run < a {
        let y = r.len();
        let m = gens.iter().any(|&g| g as usize <= y && r[y - g as usize]);
        r.push(m);
        if m {
            run += 1;
        } else {
            run = 0;
            last_gap = y as i64;
        }
    }
    Ok(last_gap)
}

pub fn is_independent(p: &GeneratorSet) -> bool {
    let g = p.as_slice();
    (0..g.len()).all(|i| {
        let rest: Vec<u64> = g.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        !Residues::new(&rest).contains(g[i])
    })
}

/// Drops every generator already spanned by the smaller ones, scanning
/// ascending. Returns `G*` and its elements as an ordered tuple.
pub fn reduce_prefix(g: &GeneratorSet) -> (GeneratorSet, Vec<u64>) {
    let tuple = reduce_slice(g.as_slice());
    (GeneratorSet(tuple.clone()), tuple)
}

fn reduce_slice(sorted: &[u64]) -> Vec<u64> {
    let mut kept: Vec<u64> = Vec::new();
    for &x in sorted {
        if !Residues::new(&kept).contains(x) {
            kept.push(x);
        }
    }
    kept
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime greater than both `F(p)` and `max p`.
pub fn q_of(p: &GeneratorSet) -> Result<u64> {
    let f = frobenius(p)?;
    let mut c = (f.max(0) as u64).max(p.largest()) + 1;
    while !is_prime(c) {
        c += 1;
    }
    Ok(c)
}

/// A record of every condition checked for `N + ⟨P⟩` being `(k, N)`-special.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSetCertificate {
    pub k: usize,
    pub n: u64,
    pub p: Vec<u64>,
    pub a: u64,
    pub t: Option<Vec<u64>>,
    pub t_max: Option<u64>,
    pub frobenius: Option<i64>,
    pub q: Option<u64>,
    pub checks: Vec<(String, bool)>,
}

impl SpecialSetCertificate {
    pub fn is_special(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|(_, ok)| !ok).map(|(c, _)| c.as_str())
    }
}

pub fn is_special(k: usize, n: u64, p: &GeneratorSet) -> SpecialSetCertificate {
    let a = p.smallest();
    let mut cert = SpecialSetCertificate {
        k,
        n,
        p: p.as_slice().to_vec(),
        a,
        t: None,
        t_max: None,
        frobenius: None,
        q: None,
        checks: Vec::new(),
    };
    let mut check = |name: String, ok: bool| cert.checks.push((name, ok));
    check(format!("|P| = k = {k} ≥ 2"), p.len() == k && k >= 2);
    check("P is independent".into(), is_independent(p));
    check(format!("min P = {a} is prime"), is_prime(a));
    let table = apery(p).ok();
    let fq = frobenius(p).and_then(|f| q_of(p).map(|q| (f, q))).ok();
    match (&table, fq) {
        (Some(t), Some((f, q))) => {
            let rest: u64 = p.sum() - a;
            let bound1 = k as u64 * (a + t.t_max);
            check(format!("N = {n} ≥ k(a + t_max) = {bound1}"), n >= bound1);
            check(format!("N = {n} ≥ q(P) + Σ(P∖{{a}}) = {}", q + rest), n >= q + rest);
            cert.t = Some(t.t.clone());
            cert.t_max = Some(t.t_max);
            cert.frobenius = Some(f);
            cert.q = Some(q);
        }
        _ => check("gcd(P) = 1".into(), false),
    }
    cert
}

/// `k² + (k−1−⌊(k−1)/2⌋)k + k(k−1)/2`
pub fn n_of_k(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    Ok(k * k + (k - 1 - (k - 1) / 2) * k + (k - 1) * k / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Erasing,
    NonErasing,
}

/// `shift + ⟨G⟩` or `shift + ⟨G⟩₊`, the latter stored as
/// `shift + ne_sum + ⟨G*⟩` with `ne_sum = Σ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinearSetRep {
    pub variant: Variant,
    pub shift: u64,
    pub gstar: Vec<u64>,
    pub ne_sum: u64,
}

impl<'de> Deserialize<'de> for LinearSetRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            variant: Variant,
            shift: u64,
            gstar: Vec<u64>,
            #[serde(default)]
            ne_sum: u64,
        }
        let raw = Raw::deserialize(d)?;
        LinearSetRep::from_parts(raw.variant, raw.shift, raw.gstar, raw.ne_sum)
            .map_err(serde::de::Error::custom)
    }
}

impl LinearSetRep {
    pub fn from_parts(variant: Variant, shift: u64, gstar: Vec<u64>, ne_sum: u64) -> Result<Self> {
        if gstar.windows(2).any(|w| w[0] >= w[1]) || gstar.contains(&0) {
            return Err(Error::parse("gstar must be strictly increasing positive integers"));
        }
        if reduce_slice(&gstar) != gstar {
            return Err(Error::parse("gstar must be independent"));
        }
        if variant == Variant::Erasing && ne_sum != 0 {
            return Err(Error::parse("ne_sum must be 0 for erasing linear sets"));
        }
        if variant == Variant::NonErasing && ne_sum < gstar.iter().sum::<u64>() {
            return Err(Error::parse("ne_sum is smaller than the sum of gstar"));
        }
        Ok(LinearSetRep { variant, shift, gstar, ne_sum })
    }

    /// ⟨g⟩
    pub fn linear(g: &GeneratorSet) -> Self {
        LinearSetRep {
            variant: Variant::Erasing,
            shift: 0,
            gstar: reduce_slice(g.as_slice()),
            ne_sum: 0,
        }
    }

    /// ⟨g⟩₊
    pub fn non_erasing(g: &GeneratorSet) -> Self {
        LinearSetRep {
            variant: Variant::NonErasing,
            shift: 0,
            gstar: reduce_slice(g.as_slice()),
            ne_sum: g.sum(),
        }
    }

    /// `offset + ⟨g⟩`
    pub fn offset_span(offset: u64, g: &GeneratorSet) -> Self {
        LinearSetRep::linear(g).shifted(offset)
    }

    pub fn shifted(mut self, c: u64) -> Self {
        self.shift += c;
        self
    }

    /// The same set with the shift removed.
    pub fn unshifted(&self) -> Self {
        LinearSetRep { shift: 0, ..self.clone() }
    }

    /// The least element.
    pub fn offset(&self) -> u64 {
        self.shift + self.ne_sum
    }

    pub fn residues(&self) -> Residues {
        Residues::new(&self.gstar)
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.offset() && self.residues().contains(x - self.offset())
    }

    /// Members up to `limit`, ascending.
    pub fn members_upto(&self, limit: u64) -> Vec<u64> {
        let res = self.residues();
        let o = self.offset();
        (o..=limit).filter(|&x| res.contains(x - o)).collect()
    }

    /// From this value on, membership repeats with period `min gstar`.
    pub fn periodic_from(&self) -> u64 {
        self.offset() + self.residues().t_max_finite()
    }

    pub fn is_subset(&self, other: &LinearSetRep) -> bool {
        let (ra, rb) = (self.residues(), other.residues());
        let period = match (ra.modulus(), rb.modulus()) {
            (0, _) | (_, 0) => 1,
            (a, b) => a.lcm(&b),
        };
        let limit = self.periodic_from().max(other.periodic_from()) + period;
        let (oa, ob) = (self.offset(), other.offset());
        (oa..=limit).all(|x| !ra.contains(x - oa) || (x >= ob && rb.contains(x - ob)))
    }

    pub fn is_proper_subset(&self, other: &LinearSetRep) -> bool {
        !linset_equal(self, other) && self.is_subset(other)
    }

    fn key(&self) -> (u64, &[u64]) {
        (self.offset(), &self.gstar)
    }
}

impl fmt::Display for LinearSetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gstar.iter().map(u64::to_string).collect();
        write!(f, "{}+<{}>", self.offset(), g.join(","))
    }
}

/// Concept equality: same least element and same independent generators.
/// The variant and the split of the offset into shift and `ne_sum` do not
/// matter, so `⟨2,3⟩₊` equals `5 + ⟨2,3⟩`.
pub fn linset_equal(l1: &LinearSetRep, l2: &LinearSetRep) -> bool {
    l1.key() == l2.key()
}

impl PartialOrd for LinearSetRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearSetRep {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then_with(|| (self.variant, self.shift).cmp(&(other.variant, other.shift)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Linset,
    Cflinset,
    Nelinset,
    Necflinset,
}

impl Family {
    fn cofinite(self) -> bool {
        matches!(self, Family::Cflinset | Family::Necflinset)
    }

    fn non_erasing(self) -> bool {
        matches!(self, Family::Nelinset | Family::Necflinset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftMode {
    /// The family itself.
    None,
    /// `c + L` for every `c ≤ max`.
    Range(u64),
    /// The members `c + L` of the shifted family whose least element is exactly `N`.
    IndexedN(u64),
}

/// Every concept of the family with at most `k` generators, each at most
/// `bound`, deduplicated as concepts and sorted.
pub fn enumerate_class(
    family: Family,
    shift: ShiftMode,
    k: usize,
    bound: u64,
    budget: &Budget,
) -> Result<Vec<LinearSetRep>> {
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    let count = count_subsets(bound, k);
    if count > budget.max_search_nodes as u128 || bound > 64 {
        return Err(Error::resource(format!(
            "{count} generator sets with bound {bound} exceed the enumeration budget"
        )));
    }
    let mut out: BTreeMap<(u64, Vec<u64>), LinearSetRep> = BTreeMap::new();
    let mut add = |rep: LinearSetRep| {
        out.entry((rep.offset(), rep.gstar.clone())).or_insert(rep);
    };
    let mut gens = Vec::new();
    let mut visit = |g: &[u64]| -> Result<()> {
        budget.check_time()?;
        let set = GeneratorSet(g.to_vec());
        if family.cofinite() && set.gcd() != 1 {
            return Ok(());
        }
        let base = if family.non_erasing() {
            LinearSetRep::non_erasing(&set)
        } else {
            LinearSetRep::linear(&set)
        };
        match shift {
            ShiftMode::None => add(base),
            ShiftMode::Range(max) => (0..=max).for_each(|c| add(base.clone().shifted(c))),
            ShiftMode::IndexedN(n) => {
                if base.offset() <= n {
                    let c = n - base.offset();
                    add(base.shifted(c));
                }
            }
        }
        Ok(())
    };
    subsets_upto(1, bound, k, &mut gens, &mut visit)?;
    Ok(out.into_values().collect())
}

fn count_subsets(n: u64, k: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 1..=k.min(n as usize) as u128 {
        c = c * (n as u128 - i + 1) / i;
        total += c;
    }
    total
}

fn subsets_upto(
    from: u64,
    bound: u64,
    k: usize,
    cur: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    for x in from..=bound {
        cur.push(x);
        f(cur)?;
        if cur.len() < k {
            subsets_upto(x + 1, bound, k, cur, f)?;
        }
        cur.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloorCheck {
    pub holds: bool,
    /// A set of the given size that no proper subset in the class contains.
    pub weak_spanning_set: Option<Vec<u64>>,
    pub subsets_checked: u64,
}

/// Checks that no `size`-element subset of `l ∩ [0, window]` is a weak
/// spanning set of `l` w.r.t. `class`: each such subset must lie inside some
/// class member that is a proper subset of `l`.
pub fn weak_spanning_floor(
    l: &LinearSetRep,
    class: &[LinearSetRep],
    size: usize,
    window: u64,
    budget: &Budget,
) -> Result<FloorCheck> {
    let elems = l.members_upto(window);
    let m = elems.len();
    if count_choose(m as u64, size) > budget.max_search_nodes as u128 {
        return Err(Error::resource(format!(
            "C({m}, {size}) subsets exceed the search budget"
        )));
    }
    // membership of each window element in each proper subset of l
    let covers: Vec<Vec<bool>> = class
        .iter()
        .filter(|c| c.is_proper_subset(l))
        .map(|c| elems.iter().map(|&x| c.contains(x)).collect())
        .collect();
    let mut idx: Vec<usize> = (0..size).collect();
    let mut checked = 0u64;
    if size > m {
        return Ok(FloorCheck { holds: true, weak_spanning_set: None, subsets_checked: 0 });
    }
    loop {
        checked += 1;
        if checked.is_multiple_of(4096) {
            budget.check_time()?;
        }
        if !covers.iter().any(|row| idx.iter().all(|&i| row[i])) {
            return Ok(FloorCheck {
                holds: false,
                weak_spanning_set: Some(idx.iter().map(|&i| elems[i]).collect()),
                subsets_checked: checked,
            });
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(FloorCheck { holds: true, weak_spanning_set: None, subsets_checked: checked });
            }
            i -= 1;
            if idx[i] < m - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn count_choose(n: u64, k: usize) -> u128 {
    if k as u64 > n {
        return 0;
    }
    let mut c = 1u128;
    for i in 1..=k as u128 {
        c = c * (n as u128 - i + 1) / i;
    }
    c
}
