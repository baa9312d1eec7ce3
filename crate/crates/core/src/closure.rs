//! Closure systems with canonical closed sets: linear spans over ℕ₀,
//! axis-parallel boxes in ℚ^d, convex hulls in ℚ², and convex cones in ℚ².
//!
//! Positive teaching by spanning sets: the teacher shows a minimum spanning
//! set, the student answers with its closure.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numsg::{GeneratorSet, LinearSetRep, Residues};
use crate::rational::{q, serde_qvec, Q};

pub trait ClosureSystem {
    type Point: Clone + PartialEq + Debug;
    type Closed: Clone + PartialEq + Debug;

    /// The canonical form of the smallest closed set containing `points`.
    fn closure(&self, points: &[Self::Point]) -> Self::Closed;
    fn contains(&self, c: &Self::Closed, p: &Self::Point) -> bool;
    /// A minimum-size set whose closure is `c`.
    fn min_spanning_set(&self, c: &Self::Closed) -> Vec<Self::Point>;

    fn is_subset(&self, a: &Self::Closed, b: &Self::Closed) -> bool {
        self.min_spanning_set(a).iter().all(|p| self.contains(b, p))
    }
}

/// `s ⊆ l` and `cl(s) = l`.
pub fn is_spanning<C: ClosureSystem>(sys: &C, s: &[C::Point], l: &C::Closed) -> bool {
    s.iter().all(|p| sys.contains(l, p)) && sys.closure(s) == *l
}

/// `s ⊆ l` and no member of `class` that is a proper subset of `l` contains `s`.
pub fn is_weak_spanning<C: ClosureSystem>(
    sys: &C,
    s: &[C::Point],
    l: &C::Closed,
    class: &[C::Closed],
    max_class: usize,
) -> Result<bool> {
    if class.len() > max_class {
        return Err(Error::resource(format!(
            "class of {} closed sets exceeds the bound of {max_class}",
            class.len()
        )));
    }
    if !s.iter().all(|p| sys.contains(l, p)) {
        return Ok(false);
    }
    Ok(!class
        .iter()
        .any(|c| c != l && sys.is_subset(c, l) && s.iter().all(|p| sys.contains(c, p))))
}

pub fn teach_by_spanning<C: ClosureSystem>(sys: &C, l: &C::Closed) -> Vec<C::Point> {
    sys.min_spanning_set(l)
}

pub fn student_closure<C: ClosureSystem>(sys: &C, positives: &[C::Point]) -> C::Closed {
    sys.closure(positives)
}

/// Linear spans ⟨A⟩ over ℕ₀, represented by independent generators.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearSpanN0;

impl ClosureSystem for LinearSpanN0 {
    type Point = u64;
    type Closed = Vec<u64>;

    fn closure(&self, points: &[u64]) -> Vec<u64> {
        let pos: Vec<u64> = points.iter().copied().filter(|&x| x > 0).collect();
        match GeneratorSet::new(pos) {
            Ok(g) => LinearSetRep::linear(&g).gstar,
            Err(_) => Vec::new(),
        }
    }

    fn contains(&self, c: &Vec<u64>, p: &u64) -> bool {
        Residues::new(c).contains(*p)
    }

    fn min_spanning_set(&self, c: &Vec<u64>) -> Vec<u64> {
        c.clone()
    }
}

/// Closed axis-parallel boxes in ℚ^d, plus the empty set.
#[derive(Debug, Clone, Copy)]
pub struct BoxRd {
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBox {
    #[serde(with = "serde_qvec")]
    pub lo: Vec<Q>,
    #[serde(with = "serde_qvec")]
    pub hi: Vec<Q>,
}

impl ClosureSystem for BoxRd {
    type Point = Vec<Q>;
    type Closed = Option<RationalBox>;

    fn closure(&self, points: &[Vec<Q>]) -> Option<RationalBox> {
        let first = points.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in &points[1..] {
            for i in 0..self.d {
                if p[i] < lo[i] {
                    lo[i] = p[i].clone();
                }
                if p[i] > hi[i] {
                    hi[i] = p[i].clone();
                }
            }
        }
        Some(RationalBox { lo, hi })
    }

    fn contains(&self, c: &Option<RationalBox>, p: &Vec<Q>) -> bool {
        c.as_ref()
            .is_some_and(|b| (0..self.d).all(|i| b.lo[i] <= p[i] && p[i] <= b.hi[i]))
    }

    fn min_spanning_set(&self, c: &Option<RationalBox>) -> Vec<Vec<Q>> {
        match c {
            None => Vec::new(),
            Some(b) if b.lo == b.hi => vec![b.lo.clone()],
            Some(b) => vec![b.lo.clone(), b.hi.clone()],
        }
    }
}

pub type P2 = [Q; 2];

fn cross(o: &P2, a: &P2, b: &P2) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Convex hulls of finite point sets in ℚ². Closed sets are their vertex
/// lists: counterclockwise from the lexicographically smallest vertex,
/// without collinear boundary points.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConvexHull2D;

impl ClosureSystem for ConvexHull2D {
    type Point = P2;
    type Closed = Vec<P2>;

    fn closure(&self, points: &[P2]) -> Vec<P2> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return pts;
        }
        let mut lower: Vec<P2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<P2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }

    fn contains(&self, c: &Vec<P2>, p: &P2) -> bool {
        match c.len() {
            0 => false,
            1 => c[0] == *p,
            2 => {
                cross(&c[0], &c[1], p).is_zero()
                    && (0..2).all(|i| {
                        let (a, b) = if c[0][i] <= c[1][i] { (&c[0][i], &c[1][i]) } else { (&c[1][i], &c[0][i]) };
                        a <= &p[i] && &p[i] <= b
                    })
            }
            n => (0..n).all(|i| !cross(&c[i], &c[(i + 1) % n], p).is_negative()),
        }
    }

    fn min_spanning_set(&self, c: &Vec<P2>) -> Vec<P2> {
        c.clone()
    }
}

/// Convex cones in ℚ² generated by finitely many vectors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cone2D;

/// Directions are primitive integer vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cone {
    Zero,
    Ray { dir: [i64; 2] },
    /// Counterclockwise from `from` to `to`, opening angle strictly below π.
    Wedge { from: [i64; 2], to: [i64; 2] },
    Line { dir: [i64; 2] },
    /// `{x : ⟨normal, x⟩ ≥ 0}`
    HalfPlane { normal: [i64; 2] },
    Plane,
}

fn primitive(v: &P2) -> [i64; 2] {
    let l = v[0].denom().lcm(v[1].denom());
    let a: BigInt = v[0].numer() * (&l / v[0].denom());
    let b: BigInt = v[1].numer() * (&l / v[1].denom());
    let g = a.gcd(&b);
    let conv = |x: BigInt| -> i64 { i64::try_from(x / &g).expect("cone directions fit in i64") };
    [conv(a), conv(b)]
}

fn to_p2(v: [i64; 2]) -> P2 {
    [q(v[0]), q(v[1])]
}

fn icross(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn idot(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

/// Angular position: half (0 for angles in [0, π), 1 otherwise), then cross order.
fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> std::cmp::Ordering {
    let half = |v: [i64; 2]| (v[1] < 0 || (v[1] == 0 && v[0] < 0)) as u8;
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&icross(a, b)))
}

impl ClosureSystem for Cone2D {
    type Point = P2;
    type Closed = Cone;

    fn closure(&self, points: &[P2]) -> Cone {
        let mut dirs: Vec<[i64; 2]> = points
            .iter()
            .filter(|p| !(p[0].is_zero() && p[1].is_zero()))
            .map(primitive)
            .collect();
        dirs.sort_by(|a, b| angle_cmp(*a, *b));
        dirs.dedup();
        match dirs.len() {
            0 => return Cone::Zero,
            1 => return Cone::Ray { dir: dirs[0] },
            _ => {}
        }
        // The cone is a wedge iff some counterclockwise gap between
        // consecutive directions exceeds π.
        let n = dirs.len();
        let mut straight_gap = None;
        for i in 0..n {
            let (u, v) = (dirs[i], dirs[(i + 1) % n]);
            let c = icross(u, v);
            if c < 0 {
                return Cone::Wedge { from: v, to: u };
            }
            if c == 0 && idot(u, v) < 0 {
                straight_gap = Some(u);
            }
        }
        if let Some(u) = straight_gap {
            // every direction lies in the closed half-plane left of −u … u
            return if n == 2 {
                Cone::Line { dir: canonical_line(u) }
            } else {
                Cone::HalfPlane { normal: [u[1], -u[0]] }
            };
        }
        Cone::Plane
    }

    fn contains(&self, c: &Cone, p: &P2) -> bool {
        let zero = p[0].is_zero() && p[1].is_zero();
        if zero {
            return true;
        }
        let v = primitive(p);
        match c {
            Cone::Zero => false,
            Cone::Ray { dir } => v == *dir,
            Cone::Wedge { from, to } => icross(*from, v) >= 0 && icross(v, *to) >= 0,
            Cone::Line { dir } => icross(*dir, v) == 0,
            Cone::HalfPlane { normal } => idot(*normal, v) >= 0,
            Cone::Plane => true,
        }
    }

    fn min_spanning_set(&self, c: &Cone) -> Vec<P2> {
        match c {
            Cone::Zero => Vec::new(),
            Cone::Ray { dir } => vec![to_p2(*dir)],
            Cone::Wedge { from, to } => vec![to_p2(*from), to_p2(*to)],
            Cone::Line { dir } => vec![to_p2(*dir), to_p2([-dir[0], -dir[1]])],
            Cone::HalfPlane { normal } => {
                let b = [normal[1], -normal[0]];
                vec![to_p2(b), to_p2([-b[0], -b[1]]), to_p2(*normal)]
            }
            Cone::Plane => vec![to_p2([1, 0]), to_p2([0, 1]), to_p2([-1, -1])],
        }
    }
}

fn canonical_line(u: [i64; 2]) -> [i64; 2] {
    if u[1] < 0 || (u[1] == 0 && u[0] < 0) {
        [-u[0], -u[1]]
    } else {
        u
    }
}

/// A closed set of one of the built-in instances, for JSON exchange.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "instance", rename_all = "snake_case")]
pub enum ClosedSetRep {
    LinearSpanN0 { generators: Vec<u64> },
    BoxRd { d: usize, r#box: Option<RationalBox> },
    ConvexHull2d { vertices: Vec<Vec<String>> },
    Cone2d { cone: Cone },
}

impl ClosedSetRep {
    /// Checks that the stored data is the canonical form of its own closure.
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            ClosedSetRep::LinearSpanN0 { generators } => {
                LinearSpanN0.closure(generators) == *generators
            }
            ClosedSetRep::BoxRd { d, r#box } => {
                r#box.as_ref().map_or(true, |b| {
                    b.lo.len() == *d && b.hi.len() == *d && (0..*d).all(|i| b.lo[i] <= b.hi[i])
                })
            }
            ClosedSetRep::ConvexHull2d { .. } => {
                let v = self.hull_vertices()?;
                ConvexHull2D.closure(&v) == v
            }
            ClosedSetRep::Cone2d { cone } => {
                Cone2D.closure(&Cone2D.min_spanning_set(cone)) == *cone
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::parse("closed set is not in canonical form"))
        }
    }

    pub fn hull_vertices(&self) -> Result<Vec<P2>> {
        let ClosedSetRep::ConvexHull2d { vertices } = self else {
            return Err(Error::arg("not a convex hull"));
        };
        vertices
            .iter()
            .map(|v| match v.as_slice() {
                [x, y] => Ok([crate::rational::parse_rational(x)?, crate::rational::parse_rational(y)?]),
                _ => Err(Error::parse("hull vertices are pairs")),
            })
            .collect()
    }

    pub fn from_hull(vertices: &[P2]) -> Self {
        ClosedSetRep::ConvexHull2d {
            vertices: vertices
                .iter()
                .map(|v| v.iter().map(crate::rational::format_rational).collect())
                .collect(),
        }
    }
}
