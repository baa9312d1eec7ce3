//! Exact feasibility of small systems of strict and non-strict linear
//! inequalities over ℚ by Fourier–Motzkin elimination.

use num_traits::{Signed, Zero};

use crate::rational::Q;

/// `coeffs · w + constant ≥ 0`, or `> 0` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Q>,
    pub constant: Q,
    pub strict: bool,
}

impl Inequality {
    pub fn homogeneous(coeffs: Vec<Q>, strict: bool) -> Self {
        Inequality {
            constant: Q::zero(),
            coeffs,
            strict,
        }
    }

    /// Divides by the first non-zero coefficient magnitude so duplicates collapse.
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(|c| c.abs());
        if let Some(s) = scale {
            for c in &mut self.coeffs {
                *c = &*c / &s;
            }
            self.constant = &self.constant / &s;
        }
        self
    }
}

/// Whether some `w ∈ ℚ^n` satisfies every inequality.
pub fn feasible(system: &[Inequality]) -> bool {
    let n = system.first().map_or(0, |i| i.coeffs.len());
    let mut rows: Vec<Inequality> = system.iter().cloned().map(Inequality::normalized).collect();
    dedup(&mut rows);
    for j in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[j].is_positive() {
                pos.push(r);
            } else if r.coeffs[j].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for m in &neg {
                let (a, b) = (&p.coeffs[j], -&m.coeffs[j]);
                // b·p + a·m cancels variable j
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&m.coeffs)
                    .map(|(x, y)| &b * x + a * y)
                    .collect();
                let constant = &b * &p.constant + a * &m.constant;
                rest.push(
                    Inequality {
                        coeffs,
                        constant,
                        strict: p.strict || m.strict,
                    }
                    .normalized(),
                );
            }
        }
        rows = rest;
        dedup(&mut rows);
    }
    rows.iter().all(|r| {
        if r.strict {
            r.constant.is_positive()
        } else {
            !r.constant.is_negative()
        }
    })
}

fn dedup(rows: &mut Vec<Inequality>) {
    let mut out: Vec<Inequality> = Vec::with_capacity(rows.len());
    for r in rows.drain(..) {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    *rows = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ineq(c: &[i64], k: i64, strict: bool) -> Inequality {
        Inequality {
            coeffs: c.iter().map(|&x| q(x)).collect(),
            constant: q(k),
            strict,
        }
    }

    #[test]
    fn strictness_matters() {
        // x ≥ 0 and −x ≥ 0 is feasible (x = 0); x > 0 and −x ≥ 0 is not
        assert!(feasible(&[ineq(&[1], 0, false), ineq(&[-1], 0, false)]));
        assert!(!feasible(&[ineq(&[1], 0, true), ineq(&[-1], 0, false)]));
    }

    #[test]
    fn two_variables() {
        // x + y ≥ 2, x ≤ 0, y ≤ 1
        assert!(!feasible(&[ineq(&[1, 1], -2, false), ineq(&[-1, 0], 0, false), ineq(&[0, -1], 1, false)]));
        // x + y ≥ 1, x ≤ 0, y ≤ 1
        assert!(feasible(&[ineq(&[1, 1], -1, false), ineq(&[-1, 0], 0, false), ineq(&[0, -1], 1, false)]));
    }
}
