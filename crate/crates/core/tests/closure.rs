//! Closure systems against oracles built from Carathéodory-style
//! decompositions: a point lies in a planar hull iff it lies in a triangle
//! on three of the points, and in a planar cone iff it is a nonnegative
//! combination of at most two generators.

use std::collections::BTreeSet;

use pbtlab::closure::{
    is_spanning, is_weak_spanning, student_closure, teach_by_spanning, BoxRd, ClosedSetRep, ClosureSystem, Cone,
    Cone2D, ConvexHull2D, LinearSpanN0, P2,
};
use pbtlab::rational::{q, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn p(x: i64, y: i64) -> P2 {
    [q(x), q(y)]
}

fn cross(o: &P2, a: &P2, b: &P2) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn on_segment(a: &P2, b: &P2, x: &P2) -> bool {
    cross(a, b, x).is_zero()
        && (0..2).all(|i| a[i].clone().min(b[i].clone()) <= x[i] && x[i] <= a[i].clone().max(b[i].clone()))
}

fn in_triangle(a: &P2, b: &P2, c: &P2, x: &P2) -> bool {
    let s = [cross(a, b, x), cross(b, c, x), cross(c, a, x)];
    s.iter().all(|v| *v >= Q::zero()) || s.iter().all(|v| *v <= Q::zero())
}

fn oracle_hull(pts: &[P2], x: &P2) -> bool {
    let n = pts.len();
    (0..n).any(|i| {
        pts[i] == *x
            || (i + 1..n).any(|j| {
                on_segment(&pts[i], &pts[j], x)
                    || (j + 1..n).any(|k| {
                        cross(&pts[i], &pts[j], &pts[k]) != Q::zero() && in_triangle(&pts[i], &pts[j], &pts[k], x)
                    })
            })
    })
}

fn oracle_cone(gens: &[P2], x: &P2) -> bool {
    let origin = p(0, 0);
    if *x == origin {
        return true;
    }
    let ray = |u: &P2| cross(&origin, u, x).is_zero() && &u[0] * &x[0] + &u[1] * &x[1] > Q::zero();
    let pair = |u: &P2, v: &P2| {
        let det = &u[0] * &v[1] - &u[1] * &v[0];
        if det.is_zero() {
            return false;
        }
        let a = (&x[0] * &v[1] - &x[1] * &v[0]) / &det;
        let b = (&u[0] * &x[1] - &u[1] * &x[0]) / &det;
        a >= Q::zero() && b >= Q::zero()
    };
    gens.iter().any(ray) || gens.iter().enumerate().any(|(i, u)| gens[i + 1..].iter().any(|v| pair(u, v)))
}

/// Σ aᵢgᵢ ≤ limit over ℕ₀.
fn oracle_span(g: &[u64], limit: u64) -> BTreeSet<u64> {
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    for v in 1..=limit as usize {
        reach[v] = g.iter().any(|&x| x > 0 && x as usize <= v && reach[v - x as usize]);
    }
    (0..=limit).filter(|&v| reach[v as usize]).collect()
}

fn points(range: i64, max: usize) -> impl Strategy<Value = Vec<P2>> {
    prop::collection::vec((-range..=range, -range..=range).prop_map(|(x, y)| p(x, y)), 0..=max)
}

fn grid(range: i64) -> Vec<P2> {
    (-range..=range).flat_map(|x| (-range..=range).map(move |y| p(x, y))).collect()
}

/// Extensive, idempotent, and spanned back by a minimum spanning set no
/// larger than the input.
fn check_axioms<C: ClosureSystem>(sys: &C, s: &[C::Point]) -> Result<(), TestCaseError> {
    let c = sys.closure(s);
    for x in s {
        prop_assert!(sys.contains(&c, x));
    }
    let span = teach_by_spanning(sys, &c);
    prop_assert!(span.len() <= s.len());
    prop_assert_eq!(&student_closure(sys, &span), &c);
    prop_assert!(is_spanning(sys, &span, &c));
    prop_assert_eq!(&sys.closure(&span), &sys.closure(&[s, &span[..]].concat()));
    Ok(())
}

proptest! {
    #[test]
    fn hull_membership(pts in points(4, 7)) {
        let h = ConvexHull2D;
        check_axioms(&h, &pts)?;
        let hull = h.closure(&pts);
        for x in grid(5) {
            prop_assert_eq!(h.contains(&hull, &x), oracle_hull(&pts, &x), "{:?}", x);
        }
        // every vertex is needed
        for i in 0..hull.len() {
            let mut rest = hull.clone();
            let v = rest.remove(i);
            prop_assert!(!h.contains(&h.closure(&rest), &v));
        }
    }

    #[test]
    fn cone_membership(gens in points(3, 5)) {
        let c = Cone2D;
        check_axioms(&c, &gens)?;
        let cone = c.closure(&gens);
        for x in grid(4) {
            prop_assert_eq!(c.contains(&cone, &x), oracle_cone(&gens, &x), "{:?} in {:?}", x, cone);
        }
        let rep = ClosedSetRep::Cone2d { cone };
        rep.validate().unwrap();
    }

    #[test]
    fn box_membership(pts in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..6)) {
        let b = BoxRd { d: 3 };
        let pts: Vec<Vec<Q>> = pts.into_iter().map(|v| v.into_iter().map(q).collect()).collect();
        check_axioms(&b, &pts)?;
        let bx = b.closure(&pts);
        for x in [-6i64, -2, 0, 3, 6] {
            for y in [-5i64, 0, 5] {
                let probe = vec![q(x), q(y), q(0)];
                let expect = !pts.is_empty()
                    && (0..3).all(|i| pts.iter().any(|v| v[i] <= probe[i]) && pts.iter().any(|v| v[i] >= probe[i]));
                prop_assert_eq!(b.contains(&bx, &probe), expect);
            }
        }
    }

    #[test]
    fn span_membership(g in prop::collection::vec(0u64..=12, 0..5)) {
        let s = LinearSpanN0;
        check_axioms(&s, &g)?;
        let c = s.closure(&g);
        let members = oracle_span(&g, 120);
        for v in 0..=120u64 {
            prop_assert_eq!(s.contains(&c, &v), members.contains(&v));
        }
    }

    #[test]
    fn closure_is_monotone(a in points(3, 4), b in points(3, 4)) {
        let h = ConvexHull2D;
        let ab = [&a[..], &b[..]].concat();
        prop_assert!(h.is_subset(&h.closure(&a), &h.closure(&ab)));
        let c = Cone2D;
        prop_assert!(c.is_subset(&c.closure(&a), &c.closure(&ab)));
    }

    /// Intervals with endpoints in a grid form an intersection-closed class
    /// containing the closure of every grid subset, so weak spanning
    /// coincides with spanning.
    #[test]
    fn weak_spanning_equals_spanning_on_intervals(sel in 0u32..1 << 6, lo in 0i64..6, len in 0i64..6) {
        let b = BoxRd { d: 1 };
        let grid: Vec<Vec<Q>> = (0..6).map(|x| vec![q(x)]).collect();
        let mut class = vec![None];
        for a in 0..6 {
            for z in a..6 {
                class.push(b.closure(&[vec![q(a)], vec![q(z)]]));
            }
        }
        let target = b.closure(&[vec![q(lo)], vec![q((lo + len).min(5))]]);
        let s: Vec<Vec<Q>> = (0..6).filter(|i| sel >> i & 1 == 1).map(|i| grid[i].clone()).collect();
        prop_assert_eq!(is_weak_spanning(&b, &s, &target, &class, 100).unwrap(), is_spanning(&b, &s, &target));
    }
}

#[test]
fn weak_spanning_is_weaker_without_intersections() {
    // ⟨2⟩ has no smaller member here since {0} is missing, so ∅ weakly spans it
    let s = LinearSpanN0;
    let class = vec![vec![2], vec![1]];
    assert!(is_weak_spanning(&s, &[], &vec![2], &class, 10).unwrap());
    assert!(!is_spanning(&s, &[], &vec![2]));
    assert!(is_weak_spanning(&s, &[], &vec![2], &class, 1).is_err());
}

#[test]
fn spanning_sets_in_the_plane() {
    let h = ConvexHull2D;
    let square = h.closure(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1)]);
    assert_eq!(teach_by_spanning(&h, &square).len(), 4);
    let c = Cone2D;
    assert_eq!(teach_by_spanning(&c, &Cone::Plane).len(), 3);
    assert_eq!(c.closure(&teach_by_spanning(&c, &Cone::HalfPlane { normal: [1, 2] })), Cone::HalfPlane { normal: [1, 2] });
    assert_eq!(c.closure(&[p(0, 0)]), Cone::Zero);
}
