//! The reproducibility checks: fourteen seeded, exact experiments with time
//! limits, shared by the acceptance tests and `pbtlab verify-paper`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissible::{check_admissible, verify_teaching_set, Admissibility, TeachingMap};
use crate::class::{FiniteClass, Sample};
use crate::closure::{
    is_spanning, student_closure, teach_by_spanning, BoxRd, ClosureSystem, Cone2D, ConvexHull2D, LinearSpanN0,
    RationalBox,
};
use crate::dims::{self, Budget, Dim};
use crate::error::Result;
use crate::gallery;
use crate::halfspaces::{
    decode_general, decode_homogeneous, e1_teaching_set, same_halfspace, teach_general, teach_homogeneous,
    verify_good_choice, verify_unique_cone, RationalHalfspace, SignedExample,
};
use crate::linset_teach::{
    shift_student, shift_teach, student_nelinset, student_shifted_nelinset, teach_linset, teach_nelinset,
    teach_shifted_nelinset, window_class, window_sample, Linset, LinsetProtocol, Nelinset,
};
use crate::numsg::{
    enumerate_class, frobenius, gcd_all, is_special, linset_equal, weak_spanning_floor, Family, GeneratorSet,
    LinearSetRep, ShiftMode,
};
use crate::pbtd_one::{classify_singleton_extension, decide_pbtd_1, SingletonExtension};
use crate::rational::{q, q2, Q};

pub const DEFAULT_SEED: u64 = 20_170_509;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Outcome = Result<std::result::Result<String, String>>;

struct Check {
    id: u8,
    name: &'static str,
    limit_secs: u64,
    run: fn(&mut ChaCha8Rng) -> Outcome,
}

const CHECKS: [Check; 14] = [
    Check { id: 1, name: "powerset and slice TD_min", limit_secs: 5, run: powerset_slices },
    Check { id: 2, name: "gadget window TD_min floor", limit_secs: 5, run: gadget_floor },
    Check { id: 3, name: "sign class teaching dimensions", limit_secs: 1, run: sign_class },
    Check { id: 4, name: "PBTD equals RTD on finite classes", limit_secs: 60, run: pbtd_equals_rtd },
    Check { id: 5, name: "NELINSET round trips", limit_secs: 120, run: nelinset_round_trips },
    Check { id: 6, name: "shift round trips", limit_secs: 30, run: shift_round_trips },
    Check { id: 7, name: "two-generator Frobenius numbers", limit_secs: 5, run: frobenius_pairs },
    Check { id: 8, name: "special set and weak spanning floor", limit_secs: 60, run: special_floor },
    Check { id: 9, name: "k = 3 gadget inclusion", limit_secs: 1, run: gadget_k3 },
    Check { id: 10, name: "homogeneous halfspace round trips", limit_secs: 10, run: homogeneous_halfspaces },
    Check { id: 11, name: "general halfspace round trips", limit_secs: 20, run: general_halfspaces },
    Check { id: 12, name: "classical halfspace teaching sets", limit_secs: 5, run: classical_halfspace_td },
    Check { id: 13, name: "PBTD = 1 characterizations", limit_secs: 60, run: pbtd_one_characterizations },
    Check { id: 14, name: "admissibility and closure properties", limit_secs: 60, run: property_suite },
];

pub fn check_ids() -> impl Iterator<Item = u8> {
    CHECKS.iter().map(|c| c.id)
}

pub fn check_name(id: u8) -> Option<&'static str> {
    CHECKS.iter().find(|c| c.id == id).map(|c| c.name)
}

/// Runs one check with its own RNG stream derived from `seed`.
pub fn run_check(id: u8, seed: u64) -> Option<CheckResult> {
    let check = CHECKS.iter().find(|c| c.id == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 32));
    let start = Instant::now();
    let outcome = (check.run)(&mut rng);
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(check.limit_secs);
    let (ok, mut detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if ok && elapsed > limit {
        detail = format!("{detail}; exceeded the {}s limit", check.limit_secs);
    }
    Some(CheckResult {
        id,
        name: check.name,
        passed: ok && elapsed <= limit,
        detail,
        elapsed,
        limit,
    })
}

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    check_ids().filter_map(|id| run_check(id, seed)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($fmt)+)));
        }
    };
}

fn powerset_slices(_: &mut ChaCha8Rng) -> Outcome {
    for k in 1..=5 {
        let got = dims::td_min(&gallery::powerset(k)?)?;
        ensure!(got == k, "TD_min(2^[{k}]) = {got}");
        for l in 0..=k {
            let got = dims::td_min(&gallery::k_choose_l(k, l)?)?;
            ensure!(got == l.min(k - l), "TD_min([{k}] choose {l}) = {got}");
        }
    }
    Ok(Ok("k ≤ 5, every slice".into()))
}

fn gadget_floor(_: &mut ChaCha8Rng) -> Outcome {
    for k in 2..=5 {
        let got = dims::td_min(&gallery::lk_window(k)?)?;
        ensure!(got == k - 1, "TD_min(Lk_window({k})) = {got}");
    }
    Ok(Ok("k ∈ {2,3,4,5}".into()))
}

fn sign_class(_: &mut ChaCha8Rng) -> Outcome {
    let f = gallery::f_signclass();
    ensure!(f.len() == 8, "sign class has {} concepts", f.len());
    for c in 0..f.len() {
        let t = dims::teaching_dimension(&f, c)?;
        ensure!(t == 2, "TD({}) = {t}", f.name(c));
    }
    let pbtd = dims::pbtd_bruteforce(&f, &Budget::default())?.value;
    ensure!(pbtd >= Dim::Finite(2), "PBTD(F) = {pbtd}");
    Ok(Ok(format!("8 concepts of TD 2, PBTD = {pbtd}")))
}

/// Every non-empty class over a universe of `k` elements.
pub fn all_classes(k: usize) -> impl Iterator<Item = FiniteClass> {
    let concepts = 1u64 << k;
    (1u64..1 << concepts).map(move |sel| {
        let masks: Vec<u64> = (0..concepts).filter(|m| sel >> m & 1 == 1).collect();
        FiniteClass::from_masks(k, &masks).expect("distinct masks")
    })
}

pub fn random_class(rng: &mut ChaCha8Rng, max_universe: usize, max_concepts: usize) -> FiniteClass {
    let k = rng.gen_range(1..=max_universe);
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.shuffle(rng);
    let m = rng.gen_range(1..=max_concepts.min(masks.len()));
    masks.truncate(m);
    FiniteClass::from_masks(k, &masks).expect("distinct masks")
}

fn pbtd_equals_rtd(rng: &mut ChaCha8Rng) -> Outcome {
    let budget = Budget::default();
    let mut count = 0;
    let randoms: Vec<FiniteClass> = (0..100).map(|_| random_class(rng, 5, 8)).collect();
    for class in all_classes(3).chain(randoms) {
        let p = dims::pbtd_bruteforce(&class, &budget)?.value;
        let r = dims::rtd(&class)?.value;
        ensure!(p == r, "PBTD = {p} but RTD = {r} on {:?}", class.concepts());
        count += 1;
    }
    Ok(Ok(format!("{count} classes")))
}

/// Every set of at most `k` distinct integers from `1..=bound`.
pub fn generator_sets(k: usize, bound: u64) -> Vec<GeneratorSet> {
    fn go(from: u64, bound: u64, k: usize, cur: &mut Vec<u64>, out: &mut Vec<GeneratorSet>) {
        for x in from..=bound {
            cur.push(x);
            out.push(GeneratorSet::new(cur.clone()).expect("positive"));
            if cur.len() < k {
                go(x + 1, bound, k, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, bound, k, &mut Vec::new(), &mut out);
    out
}

fn nelinset_round_trips(_: &mut ChaCha8Rng) -> Outcome {
    let sets = generator_sets(4, 12);
    for g in &sets {
        let s = teach_nelinset(g);
        ensure!(s.len() <= g.len(), "{} examples for ⟨{g}⟩₊", s.len());
        let back = student_nelinset(&s, 4)?;
        ensure!(
            linset_equal(&back, &LinearSetRep::non_erasing(g)),
            "⟨{g}⟩₊ decoded as {back}"
        );
    }
    Ok(Ok(format!("{} generator sets", sets.len())))
}

fn random_generators(rng: &mut ChaCha8Rng, max_len: usize, bound: u64) -> GeneratorSet {
    let len = rng.gen_range(1..=max_len);
    let mut pool: Vec<u64> = (1..=bound).collect();
    pool.shuffle(rng);
    GeneratorSet::new(pool[..len].to_vec()).expect("positive")
}

fn shift_round_trips(rng: &mut ChaCha8Rng) -> Outcome {
    const K: usize = 3;
    for _ in 0..100 {
        let c = rng.gen_range(0..=50);
        let g = random_generators(rng, K, 12);
        let inner = LinearSetRep::linear(&g);
        let base = Linset { k: K }.teach(&inner)?;
        let s = shift_teach(c, &Linset { k: K }, &inner)?;
        ensure!(s.len() == base.len() + 1, "shifted ⟨{g}⟩ by {c}: {} vs {} examples", s.len(), base.len());
        let back = shift_student(&s, &Linset { k: K })?;
        ensure!(linset_equal(&back, &inner.clone().shifted(c)), "{c}+⟨{g}⟩ decoded as {back}");

        let s = teach_shifted_nelinset(c, &g, K)?;
        ensure!(
            s.len() == teach_linset(&g, K)?.len() + 1,
            "shifted ⟨{g}⟩₊ by {c}: {} examples",
            s.len()
        );
        let back = student_shifted_nelinset(&s, K)?;
        ensure!(
            linset_equal(&back, &LinearSetRep::non_erasing(&g).shifted(c)),
            "{c}+⟨{g}⟩₊ decoded as {back}"
        );
    }
    Ok(Ok("100 pairs, both variants".into()))
}

fn frobenius_pairs(_: &mut ChaCha8Rng) -> Outcome {
    let mut count = 0;
    for p in 2..=30u64 {
        for q in p + 1..=30 {
            if gcd_all(&[p, q]) != 1 {
                continue;
            }
            let f = frobenius(&GeneratorSet::new(vec![p, q])?)?;
            let expect = (p * q - p - q) as i64;
            ensure!(f == expect, "F({p},{q}) = {f}, expected {expect}");
            count += 1;
        }
    }
    Ok(Ok(format!("{count} coprime pairs")))
}

fn special_floor(_: &mut ChaCha8Rng) -> Outcome {
    let budget = Budget::default();
    let p = GeneratorSet::new(vec![2, 3])?;
    let cert = is_special(2, 10, &p);
    ensure!(cert.is_special(), "(2, 10, {{2,3}}) fails {:?}", cert.first_failure());
    let class = enumerate_class(Family::Necflinset, ShiftMode::IndexedN(10), 2, 10, &budget)?;
    let l = LinearSetRep::offset_span(10, &p);
    ensure!(class.iter().any(|c| linset_equal(c, &l)), "10+⟨2,3⟩ missing from the class");
    let floor = weak_spanning_floor(&l, &class, 1, 60, &budget)?;
    ensure!(floor.holds, "weak spanning singleton {:?}", floor.weak_spanning_set);
    Ok(Ok(format!("{} concepts, {} singletons covered", class.len(), floor.subsets_checked)))
}

fn gadget_k3(_: &mut ChaCha8Rng) -> Outcome {
    let l = LinearSetRep::non_erasing(&GeneratorSet::new(vec![3, 4, 5])?);
    let lp = LinearSetRep::non_erasing(&GeneratorSet::new(vec![5, 7])?);
    ensure!(lp.contains(12) && l.contains(12), "12 is not in both sets");
    ensure!((0..=200).all(|x| !lp.contains(x) || l.contains(x)), "⟨5,7⟩₊ ⊄ ⟨3,4,5⟩₊ on [0,200]");
    ensure!((0..=200).any(|x| l.contains(x) && !lp.contains(x)), "inclusion is not proper");
    ensure!((0..=200).any(|x| x != 12 && lp.contains(x)), "⟨5,7⟩₊ = {{12}} on [0,200]");
    ensure!(lp.offset() == 12, "⟨5,7⟩₊ starts at {}", lp.offset());
    Ok(Ok("{12} ⊂ ⟨5,7⟩₊ ⊂ ⟨3,4,5⟩₊".into()))
}

/// `p/q` with `q ∈ 1..=5`, within `[−9, 9]`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let den = rng.gen_range(1..=5i64);
    q2(rng.gen_range(-9 * den..=9 * den), den)
}

pub fn random_normal(rng: &mut ChaCha8Rng, d: usize) -> Vec<Q> {
    loop {
        let w: Vec<Q> = (0..d).map(|_| random_rational(rng)).collect();
        if w.iter().any(|x| *x != q(0)) {
            return w;
        }
    }
}

fn homogeneous_halfspaces(rng: &mut ChaCha8Rng) -> Outcome {
    let mut tangents = 0;
    for _ in 0..200 {
        let d = rng.gen_range(1..=5);
        let w = random_normal(rng, d);
        let h = RationalHalfspace::homogeneous(w.clone())?;
        let t = teach_homogeneous(&w)?;
        ensure!(t.len() <= 2, "{} examples for {}", t.len(), h.render());
        let back = decode_homogeneous(&t, d)?;
        ensure!(same_halfspace(&back, &h), "{} decoded as {}", h.render(), back.render());
        if let Some(u) = t.iter().find(|e| e.y == 1) {
            let last = w.iter().rposition(|x| *x != q(0)).expect("non-zero");
            let (mut wt, mut ut) = (w[..=last].to_vec(), u.x[..=last].to_vec());
            if wt[last] < q(0) {
                wt[last] = -&wt[last];
                ut[last] = -&ut[last];
            }
            ensure!(verify_good_choice(&wt, &ut), "tangent for {} is not a good choice", h.render());
            tangents += 1;
        }
    }
    Ok(Ok(format!("200 targets, {tangents} tangents verified")))
}

fn general_halfspaces(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let d = rng.gen_range(1..=5);
        let b = if rng.gen_bool(1.0 / 3.0) { q(0) } else { random_rational(rng) };
        let h = RationalHalfspace::new(random_normal(rng, d), b)?;
        let t = teach_general(&h)?;
        ensure!(t.len() <= 6, "{} examples for {}", t.len(), h.render());
        let back = decode_general(&t, d)?;
        ensure!(same_halfspace(&back, &h), "{} decoded as {}", h.render(), back.render());
    }
    Ok(Ok("200 targets".into()))
}

fn classical_halfspace_td(_: &mut ChaCha8Rng) -> Outcome {
    for d in 2..=4 {
        let t = e1_teaching_set(d)?;
        ensure!(t.len() == d + 1, "{} examples in dimension {d}", t.len());
        ensure!(verify_unique_cone(&t, d)?, "e1 teaching set fails in dimension {d}");
        for mask in 0..(1u32 << t.len()) - 1 {
            let sub: Vec<SignedExample> = (0..t.len()).filter(|i| mask >> i & 1 == 1).map(|i| t[i].clone()).collect();
            ensure!(!verify_unique_cone(&sub, d)?, "proper subset {mask:b} suffices in dimension {d}");
        }
    }
    Ok(Ok("d ∈ {2,3,4}".into()))
}

fn singleton_class(k: usize, extra: &[u64]) -> Result<FiniteClass> {
    let mut masks: Vec<u64> = (0..k).map(|i| 1 << i).collect();
    masks.extend_from_slice(extra);
    FiniteClass::from_masks(k, &masks)
}

fn pbtd_one_characterizations(_: &mut ChaCha8Rng) -> Outcome {
    let budget = Budget::default();
    let mut count = 0;
    let mut applicable = 0;
    for class in all_classes(3) {
        let pbtd = dims::pbtd_bruteforce(&class, &budget)?.value;
        let decided = decide_pbtd_1(&class, &budget)?.is_some();
        ensure!(decided == (pbtd <= Dim::Finite(1)), "decide = {decided}, PBTD = {pbtd} on {:?}", class.concepts());
        if let Some(yes) = classify_singleton_extension(&class).is_pbtd1() {
            ensure!(yes == decided, "classification disagrees on {:?}", class.concepts());
            applicable += 1;
        }
        count += 1;
    }
    // singletons of [4] plus at most two more concepts
    let others: Vec<u64> = (0..16u64).filter(|m| m.count_ones() != 1).collect();
    let mut extras: Vec<Vec<u64>> = vec![vec![]];
    extras.extend(others.iter().map(|&m| vec![m]));
    for (i, &a) in others.iter().enumerate() {
        extras.extend(others[i + 1..].iter().map(|&b| vec![a, b]));
    }
    for extra in &extras {
        let class = singleton_class(4, extra)?;
        let expected = match extra[..] {
            [] => SingletonExtension::PureSingletons,
            [0] => SingletonExtension::PlusEmpty,
            [m] if m.count_ones() == 2 => {
                let lo = m.trailing_zeros() as usize;
                SingletonExtension::PlusPair(lo, 63 - m.leading_zeros() as usize)
            }
            _ => SingletonExtension::NotPbtd1,
        };
        let got = classify_singleton_extension(&class);
        ensure!(got == expected, "{extra:?}: classified {got:?}");
        let decided = decide_pbtd_1(&class, &budget)?.is_some();
        ensure!(Some(decided) == got.is_pbtd1(), "{extra:?}: search says {decided}");
    }
    Ok(Ok(format!(
        "{count} classes over 3 elements ({applicable} with all singletons), {} extensions of Sg([4])",
        extras.len()
    )))
}

/// Window class of distinct restrictions, paired with each member's sample.
fn protocol_window(
    reps: &[LinearSetRep],
    protocol: &dyn LinsetProtocol,
    window: u64,
) -> Result<(FiniteClass, Vec<Sample>)> {
    let mut kept: Vec<LinearSetRep> = Vec::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for r in reps {
        let row = r.members_upto(window);
        if !rows.contains(&row) {
            rows.push(row);
            kept.push(r.clone());
        }
    }
    let class = window_class(&kept, window)?;
    let samples = kept
        .iter()
        .map(|r| window_sample(&protocol.teach(r)?, window))
        .collect::<Result<Vec<_>>>()?;
    Ok((class, samples))
}

struct Shifted<P>(P);

impl<P: LinsetProtocol> LinsetProtocol for Shifted<P> {
    fn teach(&self, l: &LinearSetRep) -> Result<crate::linset_teach::LinsetSample> {
        shift_teach(l.shift, &self.0, &l.unshifted())
    }

    fn decode(&self, s: &crate::linset_teach::LinsetSample) -> Result<LinearSetRep> {
        shift_student(s, &self.0)
    }
}

fn accepts_map(class: &FiniteClass, samples: Vec<Sample>) -> Result<bool> {
    let tm = TeachingMap::new(class, samples)?;
    let Admissibility::Admissible(pref) = check_admissible(&tm, class)? else {
        return Ok(false);
    };
    for c in 0..class.len() {
        if !verify_teaching_set(c, class, &pref, tm.sample(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn closure_round_trips<C: ClosureSystem>(sys: &C, closed: &[C::Closed]) -> std::result::Result<(), String> {
    for l in closed {
        let s = teach_by_spanning(sys, l);
        if student_closure(sys, &s) != *l || !is_spanning(sys, &s, l) {
            return Err(format!("round trip fails for {l:?}"));
        }
        for skip in 0..s.len() {
            let fewer: Vec<C::Point> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p.clone()).collect();
            if is_spanning(sys, &fewer, l) {
                return Err(format!("{} points span {l:?}", fewer.len()));
            }
        }
    }
    Ok(())
}

fn property_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let budget = Budget::default();
    // planted cycles: T(c_i) is labeled by c_i only where c_i and c_{i+1} agree
    for _ in 0..300 {
        let class = random_class(rng, 5, 8);
        if class.len() < 2 {
            continue;
        }
        let mut cycle: Vec<usize> = (0..class.len()).collect();
        cycle.shuffle(rng);
        cycle.truncate(rng.gen_range(2..=class.len()));
        let n = class.universe().size();
        let mut samples: Vec<Sample> = (0..class.len()).map(|c| Sample::labeled_by(class.concept(c), 0..n)).collect();
        for (i, &c) in cycle.iter().enumerate() {
            let next = class.concept(cycle[(i + 1) % cycle.len()]);
            let agree = (0..n).filter(|&x| class.concept(c).contains(x) == next.contains(x));
            samples[c] = Sample::labeled_by(class.concept(c), agree);
        }
        let tm = TeachingMap::new(&class, samples)?;
        ensure!(!check_admissible(&tm, &class)?.is_admissible(), "planted cycle {cycle:?} accepted");
    }

    let window = 80;
    let ne = enumerate_class(Family::Nelinset, ShiftMode::None, 2, 8, &budget)?;
    let (class, samples) = protocol_window(&ne, &Nelinset { k: 2 }, window)?;
    ensure!(accepts_map(&class, samples)?, "NELINSET window map rejected");
    let lin = enumerate_class(Family::Linset, ShiftMode::None, 3, 8, &budget)?;
    let (class, samples) = protocol_window(&lin, &Linset { k: 3 }, window)?;
    ensure!(accepts_map(&class, samples)?, "LINSET window map rejected");
    let shifted = enumerate_class(Family::Linset, ShiftMode::Range(6), 2, 6, &budget)?;
    let (class, samples) = protocol_window(&shifted, &Shifted(Linset { k: 2 }), window)?;
    ensure!(accepts_map(&class, samples)?, "shifted LINSET window map rejected");

    let spans: Vec<Vec<u64>> = generator_sets(3, 15).iter().map(|g| LinearSpanN0.closure(g.as_slice())).collect();
    let boxes: Vec<Option<RationalBox>> = (0..50)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let pts: Vec<Vec<Q>> = (0..rng.gen_range(0..=4)).map(|_| (0..d).map(|_| random_rational(rng)).collect()).collect();
            BoxRd { d }.closure(&pts)
        })
        .collect();
    let point = |rng: &mut ChaCha8Rng| [random_rational(rng), random_rational(rng)];
    let hulls: Vec<Vec<[Q; 2]>> = (0..50)
        .map(|_| {
            let pts: Vec<[Q; 2]> = (0..rng.gen_range(1..=7)).map(|_| point(rng)).collect();
            ConvexHull2D.closure(&pts)
        })
        .collect();
    let cones = (0..50)
        .map(|_| {
            let pts: Vec<[Q; 2]> = (0..rng.gen_range(0..=4)).map(|_| point(rng)).collect();
            Cone2D.closure(&pts)
        })
        .collect::<Vec<_>>();
    let closure_ok = closure_round_trips(&LinearSpanN0, &spans)
        .and_then(|_| boxes.iter().try_for_each(|b| {
            let d = b.as_ref().map_or(1, |b| b.lo.len());
            closure_round_trips(&BoxRd { d }, std::slice::from_ref(b))
        }))
        .and_then(|_| closure_round_trips(&ConvexHull2D, &hulls))
        .and_then(|_| closure_round_trips(&Cone2D, &cones));
    if let Err(e) = closure_ok {
        return Ok(Err(e));
    }
    Ok(Ok("300 planted cycles rejected; 3 window maps accepted; 4 closure instances".into()))
}
