//! Halfspaces `H_{w,b} = {x : ⟨w, x⟩ + b ≥ 0}` over ℚ^d with exact
//! arithmetic, and teacher/decoder pairs that use at most two examples for
//! homogeneous halfspaces and at most six for general ones.
//!
//! The homogeneous student prefers normals with a larger `|w_d| / ‖w‖` and,
//! before that, more trailing zero coordinates. Given the sign of `w_d` and one
//! tangent constraint `⟨w, u⟩ ≥ 0`, the preferred normal has a closed form,
//! so no optimization is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::class::{Concept, FiniteClass, Universe};
use crate::error::{Error, Result};
use crate::fourier_motzkin::{feasible, Inequality};
use crate::rational::{format_rational, q, serde_qvec, Q};

pub type QVec = Vec<Q>;

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[Q]) -> Q {
    dot(a, a)
}

fn unit(d: usize, i: usize, scale: Q) -> QVec {
    let mut v = vec![Q::zero(); d];
    v[i] = scale;
    v
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Index of the last non-zero coordinate.
fn last_nonzero(v: &[Q]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

fn sign_of(x: &Q) -> Q {
    if x.is_negative() {
        -Q::one()
    } else {
        Q::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalHalfspace {
    #[serde(with = "serde_qvec")]
    pub w: QVec,
    #[serde(with = "crate::rational::serde_q")]
    pub b: Q,
}

impl RationalHalfspace {
    pub fn new(w: QVec, b: Q) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::arg("dimension must be at least 1"));
        }
        if is_zero_vec(&w) {
            return Err(Error::arg("normal vector must be non-zero"));
        }
        Ok(RationalHalfspace { w, b })
    }

    pub fn homogeneous(w: QVec) -> Result<Self> {
        Self::new(w, Q::zero())
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// Scaled by a positive factor to a primitive integer vector `(w, b)`.
    pub fn canonical(&self) -> (Vec<BigInt>, BigInt) {
        let all: Vec<&Q> = self.w.iter().chain(std::iter::once(&self.b)).collect();
        let l = all.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = all.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
        let b = ints.pop().expect("bias present");
        (ints, b)
    }

    /// `b` scaled to `±1` when non-zero.
    pub fn normalized(&self) -> Self {
        if self.b.is_zero() {
            return self.clone();
        }
        let s = self.b.abs();
        RationalHalfspace {
            w: self.w.iter().map(|x| x / &s).collect(),
            b: &self.b / &s,
        }
    }

    pub fn value(&self, x: &[Q]) -> Q {
        dot(&self.w, x) + &self.b
    }

    pub fn render(&self) -> String {
        let w: Vec<String> = self.w.iter().map(format_rational).collect();
        format!("w=({}), b={}", w.join(","), format_rational(&self.b))
    }
}

pub fn same_halfspace(a: &RationalHalfspace, b: &RationalHalfspace) -> bool {
    a.dim() == b.dim() && a.canonical() == b.canonical()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedExample {
    #[serde(with = "serde_qvec")]
    pub x: QVec,
    pub y: i8,
}

impl SignedExample {
    pub fn new(x: QVec, y: i8) -> Self {
        SignedExample { x, y }
    }

    fn check(&self) -> Result<()> {
        if self.y != 1 && self.y != -1 {
            return Err(Error::parse(format!("label must be 1 or -1, got {}", self.y)));
        }
        Ok(())
    }
}

/// Parses `[{"x": ["1/2", 0], "y": 1}, …]`.
pub fn parse_examples(json: &str) -> Result<Vec<SignedExample>> {
    let ex: Vec<SignedExample> = serde_json::from_str(json).map_err(|e| Error::parse(e.to_string()))?;
    for e in &ex {
        e.check()?;
    }
    Ok(ex)
}

pub fn hs_label(h: &RationalHalfspace, x: &[Q]) -> Result<i8> {
    if x.len() != h.dim() {
        return Err(Error::arg(format!("point has dimension {}, halfspace {}", x.len(), h.dim())));
    }
    Ok(if h.value(x).is_negative() { -1 } else { 1 })
}

pub fn is_consistent(h: &RationalHalfspace, examples: &[SignedExample]) -> Result<bool> {
    for e in examples {
        if hs_label(h, &e.x)? != e.y {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `u = w_d·(w̃, 0) − ‖w̃‖²·e_d`, orthogonal to `w`. Zero when `w ∥ e_d`.
pub fn tangent_vector(wstar: &[Q]) -> Result<QVec> {
    if wstar.is_empty() || is_zero_vec(wstar) {
        return Err(Error::arg("tangent of the zero vector"));
    }
    let d = wstar.len();
    let wd = &wstar[d - 1];
    if wd.is_zero() {
        return Err(Error::arg("last coordinate must be non-zero"));
    }
    let tilde = &wstar[..d - 1];
    let mut u: QVec = tilde.iter().map(|x| wd * x).collect();
    u.push(-norm2(tilde));
    Ok(u)
}

/// Direction of the maximizer of `w_d` over unit vectors with `⟨w, u⟩ ≥ 0`.
/// `None` when every such vector has `w_d ≤ 0`.
fn preferred_direction(u: &[Q]) -> Option<QVec> {
    let d = u.len();
    let ud = &u[d - 1];
    if !ud.is_negative() {
        return Some(unit(d, d - 1, Q::one()));
    }
    let n = norm2(u);
    let mut m: QVec = u.iter().map(|x| -(ud * x)).collect();
    m[d - 1] += n;
    if m[d - 1].is_positive() {
        Some(m)
    } else {
        None
    }
}

fn positively_parallel(a: &[Q], b: &[Q]) -> bool {
    a.len() == b.len()
        && dot(a, b).is_positive()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Whether `w*` is the unique maximizer of `w_d` among unit vectors `w`
/// with `⟨w, u⟩ ≥ 0`.
pub fn verify_good_choice(wstar: &[Q], u: &[Q]) -> bool {
    let d = wstar.len();
    if d == 0 || u.len() != d || !wstar[d - 1].is_positive() || !dot(u, wstar).is_zero() {
        return false;
    }
    preferred_direction(u).is_some_and(|m| positively_parallel(&m, wstar))
}

/// The positive multiple of an integer vector with coprime entries.
fn primitive(v: &[Q]) -> QVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / Q::from_integer(g.clone())).collect()
}

/// Reflection in the last coordinate.
fn reflect_last(mut v: QVec) -> QVec {
    if let Some(x) = v.last_mut() {
        *x = -&*x;
    }
    v
}

fn pad(v: &[Q], d: usize) -> QVec {
    let mut out = v.to_vec();
    out.resize(d, Q::zero());
    out
}

/// At most two examples: the sign of the last non-zero coordinate, and the
/// tangent constraint unless the normal is parallel to that axis.
pub fn teach_homogeneous(wstar: &[Q]) -> Result<Vec<SignedExample>> {
    let d = wstar.len();
    let last = last_nonzero(wstar).ok_or_else(|| Error::arg("normal vector must be non-zero"))?;
    // the primitive integer normal, so that positive rescaling gives the same sample
    let (ints, _) = RationalHalfspace::homogeneous(wstar[..=last].to_vec())?.canonical();
    let w: &[Q] = &ints.into_iter().map(Q::from_integer).collect::<Vec<_>>();
    let sigma = sign_of(&w[last]);
    let mut out = vec![SignedExample::new(unit(d, last, -&sigma), -1)];
    if !is_zero_vec(&w[..last]) {
        let u = primitive(&tangent_vector(w)?);
        let u: QVec = u.into_iter().map(|x| x * &sigma).collect();
        out.push(SignedExample::new(pad(&u, d), 1));
    }
    Ok(out)
}

/// Decoder for samples produced by [`teach_homogeneous`].
pub fn decode_homogeneous(examples: &[SignedExample], d: usize) -> Result<RationalHalfspace> {
    decode_homogeneous_normal(examples, d).and_then(RationalHalfspace::homogeneous)
}

fn decode_homogeneous_normal(examples: &[SignedExample], d: usize) -> Result<QVec> {
    if d == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    for e in examples {
        e.check()?;
        if e.x.len() != d {
            return Err(Error::decode(format!("example of dimension {} in dimension {d}", e.x.len())));
        }
    }
    let (neg, pos): (Vec<_>, Vec<_>) = examples.iter().partition(|e| e.y == -1);
    if neg.len() != 1 || pos.len() > 1 {
        return Err(Error::decode("expected one negative sign example and at most one positive example"));
    }
    let last = examples
        .iter()
        .filter_map(|e| last_nonzero(&e.x))
        .max()
        .ok_or_else(|| Error::decode("all examples are zero"))?;
    let dp = last + 1;
    let sign_ex = &neg[0].x[..dp];
    if !is_zero_vec(&sign_ex[..last]) || sign_ex[last].abs() != Q::one() {
        return Err(Error::decode("the negative example must be ±e_i"));
    }
    // (−e, −1) means w_last > 0
    let sigma = -sign_ex[last].clone();
    let w = match pos.first() {
        None => unit(dp, last, sigma.clone()),
        Some(p) => {
            let u = &p.x[..dp];
            let u = if sigma.is_negative() { reflect_last(u.to_vec()) } else { u.to_vec() };
            let m = preferred_direction(&u)
                .ok_or_else(|| Error::decode("no halfspace with the required sign meets the tangent constraint"))?;
            if sigma.is_negative() {
                reflect_last(m)
            } else {
                m
            }
        }
    };
    let w = pad(&w, d);
    let h = RationalHalfspace::homogeneous(w.clone())?;
    if !is_consistent(&h, examples)? {
        return Err(Error::decode("decoded halfspace contradicts the sample"));
    }
    Ok(w)
}

/// `(0⃗, b*)`, `(−(2b*/w_d*)e_d, −b*)`, `(−(b*/w_d*)e_d, +1)`.
pub fn three_anchor_examples(wstar: &[Q], bstar: &Q) -> Result<Vec<SignedExample>> {
    let d = wstar.len();
    let wd = wstar.last().ok_or_else(|| Error::arg("empty normal"))?;
    if wd.is_zero() {
        return Err(Error::arg("last coordinate must be non-zero"));
    }
    if bstar.abs() != Q::one() {
        return Err(Error::arg("bias must be +1 or -1"));
    }
    let b_label = if bstar.is_positive() { 1 } else { -1 };
    Ok(vec![
        SignedExample::new(vec![Q::zero(); d], b_label),
        SignedExample::new(unit(d, d - 1, -(q(2) * bstar) / wd), -b_label),
        SignedExample::new(unit(d, d - 1, -bstar / wd), 1),
    ])
}

/// At most six examples: the homogeneous sample if `b* = 0`; otherwise three
/// anchors fixing `b` and `w_d`, the homogeneous sample for `w̃*` lifted onto
/// the hyperplane `x_d = −b*/w_d*`, and one boundary point fixing `‖w̃‖₁`.
pub fn teach_general(h: &RationalHalfspace) -> Result<Vec<SignedExample>> {
    let h = h.normalized();
    if h.b.is_zero() {
        return teach_homogeneous(&h.w);
    }
    let d = h.dim();
    let last = last_nonzero(&h.w).ok_or_else(|| Error::arg("normal vector must be non-zero"))?;
    let w = &h.w[..=last];
    let wd = &w[last];
    let mut out: Vec<SignedExample> = three_anchor_examples(w, &h.b)?;
    let tilde = &w[..last];
    if !is_zero_vec(tilde) {
        let lift = -&h.b / wd;
        for e in teach_homogeneous(tilde)? {
            let mut x = e.x;
            x.push(lift.clone());
            out.push(SignedExample::new(x, e.y));
        }
        let l1: Q = tilde.iter().map(|x| x.abs()).sum();
        let mut a6: QVec = tilde
            .iter()
            .map(|x| if x.is_zero() { Q::zero() } else { sign_of(x) })
            .collect();
        a6.push(-(l1 + &h.b) / wd);
        out.push(SignedExample::new(a6, 1));
    }
    for e in &mut out {
        e.x = pad(&e.x, d);
    }
    Ok(out)
}

/// Intermediate values read off a general sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralTrace {
    pub reduced_dim: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub b: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub w_d: Q,
    #[serde(with = "serde_qvec")]
    pub tilde_direction: QVec,
    #[serde(with = "crate::rational::serde_q")]
    pub l1: Q,
    pub result: RationalHalfspace,
}

pub fn decode_general(examples: &[SignedExample], d: usize) -> Result<RationalHalfspace> {
    decode_general_trace(examples, d).map(|t| t.result)
}

pub fn decode_general_trace(examples: &[SignedExample], d: usize) -> Result<GeneralTrace> {
    if d == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    for e in examples {
        e.check()?;
        if e.x.len() != d {
            return Err(Error::decode(format!("example of dimension {} in dimension {d}", e.x.len())));
        }
    }
    let Some(origin) = examples.iter().position(|e| is_zero_vec(&e.x)) else {
        let result = decode_homogeneous(examples, d)?;
        let last = last_nonzero(&result.w).expect("non-zero");
        return Ok(GeneralTrace {
            reduced_dim: last + 1,
            b: Q::zero(),
            w_d: result.w[last].clone(),
            tilde_direction: result.w[..last].to_vec(),
            l1: result.w[..last].iter().map(|x| x.abs()).sum(),
            result,
        });
    };
    let b = q(examples[origin].y as i64);
    let last = examples
        .iter()
        .filter_map(|e| last_nonzero(&e.x))
        .max()
        .ok_or_else(|| Error::decode("all examples are zero"))?;
    let on_axis = |e: &SignedExample| !e.x[last].is_zero() && is_zero_vec(&e.x[..last]);
    let axis: Vec<usize> = (0..examples.len()).filter(|&i| on_axis(&examples[i])).collect();
    let [i, j] = axis[..] else {
        return Err(Error::decode("expected exactly two examples on the last axis"));
    };
    let (a2, a3) = if examples[i].x[last] == q(2) * &examples[j].x[last] {
        (&examples[i], &examples[j])
    } else if examples[j].x[last] == q(2) * &examples[i].x[last] {
        (&examples[j], &examples[i])
    } else {
        return Err(Error::decode("axis examples are not of the form a₂ = 2·a₃"));
    };
    if a3.y != 1 || a2.y as i64 != -(examples[origin].y as i64) {
        return Err(Error::decode("axis example labels do not match the anchors"));
    }
    let c = a3.x[last].clone();
    // a₃ lies on the boundary: w_d·c + b = 0
    let wd = -&b / &c;
    let rest: Vec<&SignedExample> = (0..examples.len())
        .filter(|&k| k != origin && k != i && k != j)
        .map(|k| &examples[k])
        .collect();
    let (stage4, stage5): (Vec<&SignedExample>, Vec<&SignedExample>) =
        rest.into_iter().partition(|e| e.x[last] == c);
    let (tilde, l1) = if stage4.is_empty() && stage5.is_empty() {
        (vec![Q::zero(); last], Q::zero())
    } else {
        let [a6] = stage5[..] else {
            return Err(Error::decode("expected exactly one example off the lifted hyperplane"));
        };
        if a6.y != 1 || last == 0 {
            return Err(Error::decode("the norm example must be positive"));
        }
        let projected: Vec<SignedExample> =
            stage4.iter().map(|e| SignedExample::new(e.x[..last].to_vec(), e.y)).collect();
        let v = decode_homogeneous_normal(&projected, last)?;
        let l1 = -&a6.x[last] * &wd - &b;
        if !l1.is_positive() {
            return Err(Error::decode("the norm example forces a non-positive L1 norm"));
        }
        let vn: Q = v.iter().map(|x| x.abs()).sum();
        (v.iter().map(|x| x * &l1 / &vn).collect(), l1)
    };
    let mut w = tilde.clone();
    w.push(wd.clone());
    let result = RationalHalfspace::new(pad(&w, d), b.clone())?;
    if !is_consistent(&result, examples)? {
        return Err(Error::decode("decoded halfspace contradicts the sample"));
    }
    Ok(GeneralTrace {
        reduced_dim: last + 1,
        b,
        w_d: wd,
        tilde_direction: tilde,
        l1,
        result,
    })
}

/// Halfspaces together with the two trivial concepts, which the student
/// prefers over every proper halfspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtendedHalfspace {
    Everything,
    Nothing,
    Halfspace(RationalHalfspace),
}

pub fn teach_extended(c: &ExtendedHalfspace, d: usize) -> Result<Vec<SignedExample>> {
    let origin = vec![Q::zero(); d];
    match c {
        ExtendedHalfspace::Everything => Ok(vec![SignedExample::new(origin, 1)]),
        ExtendedHalfspace::Nothing => Ok(vec![SignedExample::new(origin, -1)]),
        ExtendedHalfspace::Halfspace(h) => {
            let mut t = teach_general(h)?;
            // An all-negative sample would decode to ∅; `σe_i` is on the positive side.
            if t.iter().all(|e| e.y == -1) {
                let neg = t[0].x.clone();
                t.push(SignedExample::new(neg.into_iter().map(|x| -x).collect(), 1));
            }
            Ok(t)
        }
    }
}

pub fn decode_extended(examples: &[SignedExample], d: usize) -> Result<ExtendedHalfspace> {
    if examples.iter().all(|e| e.y == 1) {
        return Ok(ExtendedHalfspace::Everything);
    }
    if examples.iter().all(|e| e.y == -1) {
        return Ok(ExtendedHalfspace::Nothing);
    }
    decode_general(examples, d).map(ExtendedHalfspace::Halfspace)
}

/// `{(e_i, +) : 2 ≤ i ≤ d} ∪ {(−Σ_{i≥2} e_i, +), (e₁, +)}`
pub fn e1_teaching_set(d: usize) -> Result<Vec<SignedExample>> {
    if d < 2 {
        return Err(Error::arg("dimension must be at least 2"));
    }
    let mut out: Vec<SignedExample> = (1..d).map(|i| SignedExample::new(unit(d, i, Q::one()), 1)).collect();
    let mut u = vec![-Q::one(); d];
    u[0] = Q::zero();
    out.push(SignedExample::new(u, 1));
    out.push(SignedExample::new(unit(d, 0, Q::one()), 1));
    Ok(out)
}

/// Whether the homogeneous halfspaces consistent with `t` are exactly the
/// positive multiples of `e₁`.
pub fn verify_unique_cone(t: &[SignedExample], d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    for e in t {
        e.check()?;
        if e.x.len() != d {
            return Err(Error::arg("example dimension mismatch"));
        }
    }
    let e1 = RationalHalfspace::homogeneous(unit(d, 0, Q::one()))?;
    if !is_consistent(&e1, t)? {
        return Ok(false);
    }
    let base: Vec<Inequality> = t
        .iter()
        .map(|e| {
            if e.y == 1 {
                Inequality::homogeneous(e.x.clone(), false)
            } else {
                Inequality::homogeneous(e.x.iter().map(|x| -x).collect(), true)
            }
        })
        .collect();
    let with = |extra: Vec<Inequality>| {
        let mut s = base.clone();
        s.extend(extra);
        s
    };
    for i in 1..d {
        for s in [Q::one(), -Q::one()] {
            if feasible(&with(vec![Inequality::homogeneous(unit(d, i, s), true)])) {
                return Ok(false);
            }
        }
    }
    let mut pinned: Vec<Inequality> = (1..d)
        .flat_map(|i| {
            [
                Inequality::homogeneous(unit(d, i, Q::one()), false),
                Inequality::homogeneous(unit(d, i, -Q::one()), false),
            ]
        })
        .collect();
    pinned.push(Inequality::homogeneous(unit(d, 0, -Q::one()), true));
    Ok(!feasible(&with(pinned)))
}

/// The eight homogeneous halfspaces `H_w`, `w ∈ {−1,0,1}² ∖ {0}`, on the
/// eight points of the same set.
pub fn f_signclass() -> FiniteClass {
    let pts: Vec<[i64; 2]> = (-1..=1)
        .flat_map(|a| (-1..=1).map(move |b| [a, b]))
        .filter(|p| *p != [0, 0])
        .collect();
    let labels = pts.iter().map(|p| format!("({},{})", p[0], p[1])).collect();
    let universe = Universe::new(labels).expect("distinct points");
    let named = pts
        .iter()
        .map(|w| {
            let members = (0..pts.len()).filter(|&i| w[0] * pts[i][0] + w[1] * pts[i][1] >= 0);
            (format!("H({},{})", w[0], w[1]), Concept::from_indices(pts.len(), members))
        })
        .collect();
    FiniteClass::new(universe, named).expect("the eight halfspaces are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q2;

    fn v(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn ex(xs: QVec, y: i8) -> SignedExample {
        SignedExample::new(xs, y)
    }

    #[test]
    fn labels() {
        let h = RationalHalfspace::homogeneous(v(&[1, 0])).unwrap();
        assert_eq!(hs_label(&h, &v(&[0, 5])).unwrap(), 1);
        let h = RationalHalfspace::homogeneous(v(&[3, 4])).unwrap();
        assert_eq!(hs_label(&h, &v(&[-1, 0])).unwrap(), -1);
        let h = RationalHalfspace::new(v(&[1, 2]), q(1)).unwrap();
        assert_eq!(hs_label(&h, &[q(0), q2(-1, 2)]).unwrap(), 1);
        assert!(hs_label(&h, &v(&[1])).is_err());
    }

    #[test]
    fn tangents() {
        let u = tangent_vector(&v(&[3, 4])).unwrap();
        assert!(positively_parallel(&u, &v(&[4, -3])));
        assert_eq!(tangent_vector(&v(&[1, 2, 2])).unwrap(), v(&[2, 4, -5]));
        assert!(tangent_vector(&v(&[0, 0])).is_err());
    }

    #[test]
    fn good_choice() {
        assert!(verify_good_choice(&v(&[3, 4]), &v(&[4, -3])));
        assert!(!verify_good_choice(&v(&[3, 4]), &v(&[1, 0])));
        assert!(verify_good_choice(&v(&[0, 0, 2]), &v(&[1, 1, 0])));
    }

    #[test]
    fn homogeneous_examples() {
        let t = teach_homogeneous(&v(&[3, 4])).unwrap();
        assert_eq!(t[0], ex(v(&[0, -1]), -1));
        assert!(positively_parallel(&t[1].x, &v(&[4, -3])));
        let h = decode_homogeneous(&t, 2).unwrap();
        assert!(same_halfspace(&h, &RationalHalfspace::homogeneous(v(&[3, 4])).unwrap()));

        let t = teach_homogeneous(&v(&[0, -1])).unwrap();
        assert_eq!(t, vec![ex(v(&[0, 1]), -1)]);
        assert_eq!(decode_homogeneous(&t, 2).unwrap().w, v(&[0, -1]));

        let t = teach_homogeneous(&v(&[5, 0])).unwrap();
        assert_eq!(t, vec![ex(v(&[-1, 0]), -1)]);
        assert!(same_halfspace(
            &decode_homogeneous(&t, 2).unwrap(),
            &RationalHalfspace::homogeneous(v(&[5, 0])).unwrap()
        ));
    }

    #[test]
    fn anchors() {
        let a = three_anchor_examples(&v(&[1, 2]), &q(1)).unwrap();
        assert_eq!(a, vec![ex(v(&[0, 0]), 1), ex(v(&[0, -1]), -1), ex(vec![q(0), q2(-1, 2)], 1)]);
        let a = three_anchor_examples(&v(&[1, -2]), &q(-1)).unwrap();
        assert_eq!(a[1], ex(v(&[0, -1]), 1));
        assert!(three_anchor_examples(&v(&[1, 0]), &q(1)).is_err());
    }

    #[test]
    fn general_example() {
        let h = RationalHalfspace::new(v(&[1, 2]), q(1)).unwrap();
        let t = teach_general(&h).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t[4], ex(v(&[1, -1]), 1));
        let tr = decode_general_trace(&t, 2).unwrap();
        assert_eq!((tr.b.clone(), tr.w_d.clone()), (q(1), q(2)));
        assert!(same_halfspace(&tr.result, &h));

        let axis = RationalHalfspace::new(v(&[0, 0, 7]), q(-1)).unwrap();
        let t = teach_general(&axis).unwrap();
        assert_eq!(t.len(), 3);
        assert!(same_halfspace(&decode_general(&t, 3).unwrap(), &axis));

        let homog = RationalHalfspace::homogeneous(v(&[2, -1])).unwrap();
        assert_eq!(teach_general(&homog).unwrap(), teach_homogeneous(&homog.w).unwrap());
    }

    #[test]
    fn extended() {
        for c in [ExtendedHalfspace::Everything, ExtendedHalfspace::Nothing] {
            assert_eq!(decode_extended(&teach_extended(&c, 3).unwrap(), 3).unwrap(), c);
        }
        let h = RationalHalfspace::homogeneous(v(&[0, -3])).unwrap();
        let t = teach_extended(&ExtendedHalfspace::Halfspace(h.clone()), 2).unwrap();
        assert_eq!(t.len(), 2);
        match decode_extended(&t, 2).unwrap() {
            ExtendedHalfspace::Halfspace(g) => assert!(same_halfspace(&g, &h)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cone_certificate() {
        for d in 2..=4 {
            let t = e1_teaching_set(d).unwrap();
            assert_eq!(t.len(), d + 1);
            assert!(verify_unique_cone(&t, d).unwrap());
            for skip in 0..t.len() {
                let mut s = t.clone();
                s.remove(skip);
                assert!(!verify_unique_cone(&s, d).unwrap(), "d={d}, without {skip}");
            }
        }
    }

    #[test]
    fn sign_class() {
        let f = f_signclass();
        assert_eq!((f.len(), f.universe().size()), (8, 8));
    }

    #[test]
    fn canonical_scaling() {
        let a = RationalHalfspace::new(vec![q2(1, 2), q(1)], q2(1, 4)).unwrap();
        let b = RationalHalfspace::new(v(&[2, 4]), q(1)).unwrap();
        assert!(same_halfspace(&a, &b));
        let c = RationalHalfspace::new(v(&[-2, -4]), q(-1)).unwrap();
        assert!(!same_halfspace(&a, &c));
    }

    #[test]
    fn example_json() {
        let e = parse_examples(r#"[{"x":[0,"1/2"],"y":1},{"x":["-3",1],"y":-1}]"#).unwrap();
        assert_eq!(e[0].x[1], q2(1, 2));
        assert!(parse_examples(r#"[{"x":[0],"y":0}]"#).is_err());
        assert!(parse_examples(r#"[{"x":["1/0"],"y":1}]"#).is_err());
    }
}
