//! One- and two-step drift bounds assembled from the tables.

use super::kernel::BoundaryClass as C;
use super::tables::{kernel_n2_00, kernel_n2_general, kernel_n3_0000, kernel_n3_1000, kernel_n3_s1};
use crate::symbolic::{parse_ratfn, RatFnQ};

/// `E[J | f]` for `f` in `{(0,1),(1,0),(1,1)}`.
pub fn drift1_n2_general() -> RatFnQ {
    kernel_n2_general().drift1().value
}

/// Lower bound on `E[J | f = (0,0)]`, also used for `(*,0)`.
pub fn inf00() -> RatFnQ {
    parse_ratfn("(-1/2 r^3 - 2x r^2 + x^2 r^2 + 1/2 y^2 r + (1-r)^2)/r").expect("inf00")
}

/// Lower bound on `E[J + J' | f = (0,0)]`.
pub fn drift2_n2_00() -> RatFnQ {
    let k = kernel_n2_00();
    let m = k.class_marginals();
    let get = |c: C| m.get(&c).cloned().unwrap_or_else(RatFnQ::zero);
    let low = &get(C::StarZero) + &get(C::Pair00);
    let rest = &RatFnQ::one() - &low;
    let first = k.drift1().value;
    &(&first + &(&low * &inf00())) + &(&rest * &drift1_n2_general())
}

pub fn drift1_n3_s1() -> RatFnQ {
    kernel_n3_s1().drift1().value
}

pub fn drift1_n3_1000() -> RatFnQ {
    kernel_n3_1000().drift1().value
}

/// `I0`, the lower bound on `E[J | f = (0,0,0,0)]`.
pub fn i0() -> RatFnQ {
    kernel_n3_0000().drift1().value
}

pub fn drift2_n3_1000() -> RatFnQ {
    let k = kernel_n3_1000();
    let m = k.class_marginals();
    let get = |c: C| m.get(&c).cloned().unwrap_or_else(RatFnQ::zero);
    let d10 = k.drift1().value;
    &(&(&d10 + &(&get(C::S1) * &drift1_n3_s1())) + &(&get(C::C1000) * &d10)) + &(&get(C::C0000) * &i0())
}

/// Branch bounds `(D0, D1)` on `E[J + J' | f = (0,0,0,0)]`: the star states
/// are charged `I0` in `D0` and the `(1,0,0,0)` drift in `D1`.
pub fn drift2_n3_0000() -> (RatFnQ, RatFnQ) {
    let k = kernel_n3_0000();
    let m = k.class_marginals();
    let get = |c: C| m.get(&c).cloned().unwrap_or_else(RatFnQ::zero);
    let (ds1, d10, base) = (drift1_n3_s1(), drift1_n3_1000(), i0());
    let q1 = get(C::S1);
    let q2 = &get(C::C1000) + &get(C::OneStar00);
    let q3 = get(C::C0000);
    let q4 = &get(C::Star000) + &get(C::EStar);
    let common = &(&(&base + &(&q3 * &base)) + &(&q1 * &ds1)) + &(&q2 * &d10);
    (&common + &(&q4 * &base), &common + &(&q4 * &d10))
}

/// `min(D0, D1)` at a point, `None` where `r = 0`.
pub fn min_d0_d1_at(d: &(RatFnQ, RatFnQ), x0: &crate::symbolic::Q, x1: &crate::symbolic::Q) -> Option<crate::symbolic::Q> {
    let a = d.0.eval_at(x0, x1)?;
    let b = d.1.eval_at(x0, x1)?;
    Some(if a < b { a } else { b })
}

fn max_q(a: crate::symbolic::Q, b: crate::symbolic::Q) -> crate::symbolic::Q {
    if a > b {
        a
    } else {
        b
    }
}

fn min_q(a: crate::symbolic::Q, b: crate::symbolic::Q) -> crate::symbolic::Q {
    if a < b {
        a
    } else {
        b
    }
}

/// Precomputed drift bounds for one neighbourhood size, evaluated pointwise as
/// `min_f max(drift1(f), drift2(f) / 2)` over the boundary classes.
pub struct ClassBound {
    pub n: usize,
    parts: Vec<(RatFnQ, Option<(RatFnQ, Option<RatFnQ>)>)>,
}

impl ClassBound {
    pub fn new(n: usize) -> crate::Result<Self> {
        let parts = match n {
            2 => vec![
                (drift1_n2_general(), None),
                (kernel_n2_00().drift1().value, Some((drift2_n2_00(), None))),
            ],
            3 => {
                let (d0, d1) = drift2_n3_0000();
                vec![
                    (drift1_n3_s1(), None),
                    (drift1_n3_1000(), Some((drift2_n3_1000(), None))),
                    (i0(), Some((d0, Some(d1)))),
                ]
            }
            _ => return Err(crate::Error::UnsupportedN(n)),
        };
        Ok(ClassBound { n, parts })
    }

    /// Goal threshold `-(n-1)/2`.
    pub fn threshold(&self) -> crate::symbolic::Q {
        crate::symbolic::q(-(self.n as i64 - 1), 2)
    }

    pub fn at(&self, x0: &crate::symbolic::Q, x1: &crate::symbolic::Q) -> Option<crate::symbolic::Q> {
        let half = crate::symbolic::q(1, 2);
        let mut best: Option<crate::symbolic::Q> = None;
        for (d1, d2) in &self.parts {
            let mut v = d1.eval_at(x0, x1)?;
            if let Some((a, b)) = d2 {
                let mut two = a.eval_at(x0, x1)?;
                if let Some(b) = b {
                    two = min_q(two, b.eval_at(x0, x1)?);
                }
                v = max_q(v, two * &half);
            }
            best = Some(match best {
                None => v,
                Some(b) => min_q(b, v),
            });
        }
        best
    }
}
