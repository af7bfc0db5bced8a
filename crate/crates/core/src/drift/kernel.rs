use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::state::HalfPos;
use crate::symbolic::{geom_sum, PolyQ, Q, RatFnQ};

/// Boundary state of the right end of an island, possibly with forgotten
/// (`*`) cells.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundaryClass {
    Pair00,
    Pair01,
    Pair10,
    Pair11,
    /// `(*, 0)`
    StarZero,
    /// `(*, 1)`
    StarOne,
    /// Any `(a0, a1, a2, a3)` with a 1 among the last three cells.
    S1,
    C1000,
    C0000,
    /// `(*, 0, 0, 0)`
    Star000,
    /// `(1, *, 0, 0)`
    OneStar00,
    /// `{0, *} x {*} x {0}^2`
    EStar,
}

impl BoundaryClass {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryClass::Pair00 => "(0,0)",
            BoundaryClass::Pair01 => "(0,1)",
            BoundaryClass::Pair10 => "(1,0)",
            BoundaryClass::Pair11 => "(1,1)",
            BoundaryClass::StarZero => "(*,0)",
            BoundaryClass::StarOne => "(*,1)",
            BoundaryClass::S1 => "S1",
            BoundaryClass::C1000 => "(1,0,0,0)",
            BoundaryClass::C0000 => "(0,0,0,0)",
            BoundaryClass::Star000 => "(*,0,0,0)",
            BoundaryClass::OneStar00 => "(1,*,0,0)",
            BoundaryClass::EStar => "E*",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let all = [
            BoundaryClass::Pair00,
            BoundaryClass::Pair01,
            BoundaryClass::Pair10,
            BoundaryClass::Pair11,
            BoundaryClass::StarZero,
            BoundaryClass::StarOne,
            BoundaryClass::S1,
            BoundaryClass::C1000,
            BoundaryClass::C0000,
            BoundaryClass::Star000,
            BoundaryClass::OneStar00,
            BoundaryClass::EStar,
        ];
        let compact: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ',' | ' ')).collect();
        all.into_iter().find(|c| {
            let n: String = c.name().chars().filter(|c| !matches!(c, '(' | ')' | ',')).collect();
            n == compact
        })
    }

    pub fn is_star(self) -> bool {
        matches!(
            self,
            BoundaryClass::StarZero
                | BoundaryClass::StarOne
                | BoundaryClass::Star000
                | BoundaryClass::OneStar00
                | BoundaryClass::EStar
        )
    }
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Delta {
    Exact(HalfPos),
    /// The increment is only known to be at least this value.
    AtLeast(HalfPos),
}

impl Delta {
    pub fn value(self) -> HalfPos {
        match self {
            Delta::Exact(h) | Delta::AtLeast(h) => h,
        }
    }

    pub fn is_bound(self) -> bool {
        matches!(self, Delta::AtLeast(_))
    }
}

/// One line of a transition table. With `family = true` the line stands for
/// the terms `k >= 0` with increment `delta + k` and probability
/// `prob * (1 - r)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelEntry {
    pub delta: Delta,
    pub next: BoundaryClass,
    pub prob: RatFnQ,
    pub family: bool,
}

impl KernelEntry {
    /// Total probability of the line (closed form for families).
    pub fn mass(&self) -> RatFnQ {
        if self.family {
            &self.prob * &RatFnQ::inv_r()
        } else {
            self.prob.clone()
        }
    }

    /// `sum delta * prob` over the line.
    pub fn first_moment(&self) -> RatFnQ {
        let d = Q::new(self.delta.value().doubled.into(), 2.into());
        if self.family {
            geom_sum(&d, &self.mass())
        } else {
            self.prob.scale(&d)
        }
    }

    /// Probability of the `k`-th term (`k = 0` for plain lines).
    pub fn term_prob(&self, k: u32) -> RatFnQ {
        if self.family {
            self.prob.mul_poly(&PolyQ::one_minus_r().pow(k))
        } else {
            assert_eq!(k, 0);
            self.prob.clone()
        }
    }
}

/// Expected increment, flagged when some line only gives a lower bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Drift {
    pub value: RatFnQ,
    pub lower_bound: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub n: usize,
    /// Boundary states sharing this transition law.
    pub sources: Vec<BoundaryClass>,
    pub entries: Vec<KernelEntry>,
}

impl Kernel {
    pub fn mass(&self) -> RatFnQ {
        self.entries.iter().map(KernelEntry::mass).sum()
    }

    pub fn drift1(&self) -> Drift {
        Drift {
            value: self.entries.iter().map(KernelEntry::first_moment).sum(),
            lower_bound: self.entries.iter().any(|e| e.delta.is_bound()),
        }
    }

    pub fn class_marginals(&self) -> BTreeMap<BoundaryClass, RatFnQ> {
        let mut out: BTreeMap<BoundaryClass, RatFnQ> = BTreeMap::new();
        for e in &self.entries {
            let slot = out.entry(e.next).or_insert_with(RatFnQ::zero);
            *slot = &*slot + &e.mass();
        }
        out
    }

    pub fn marginal(&self, c: BoundaryClass) -> RatFnQ {
        self.class_marginals().remove(&c).unwrap_or_else(RatFnQ::zero)
    }

    /// Numeric first moment with families truncated at `k < terms`.
    pub fn drift1_truncated(&self, e0: f64, e1: f64, terms: u32) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let ks = if e.family { terms } else { 1 };
                let p0 = e.prob.eval_f64(e0, e1);
                (0..ks)
                    .map(|k| (e.delta.value().as_f64() + k as f64) * p0 * (e0 + e1).powi(k as i32))
                    .sum::<f64>()
            })
            .sum()
    }
}

/// Builder helpers used by the transition tables.
pub(crate) struct TableBuilder {
    entries: Vec<KernelEntry>,
}

impl TableBuilder {
    pub(crate) fn new() -> Self {
        TableBuilder { entries: Vec::new() }
    }

    /// Plain line; `delta2` is the doubled increment.
    pub(crate) fn line(&mut self, delta2: i64, next: BoundaryClass, prob: PolyQ) {
        self.entries.push(KernelEntry {
            delta: Delta::Exact(HalfPos::from_doubled(delta2)),
            next,
            prob: prob.into(),
            family: false,
        });
    }

    pub(crate) fn bound_line(&mut self, delta2: i64, next: BoundaryClass, prob: PolyQ) {
        self.entries.push(KernelEntry {
            delta: Delta::AtLeast(HalfPos::from_doubled(delta2)),
            next,
            prob: prob.into(),
            family: false,
        });
    }

    /// Family `k >= 0`: increment `delta2/2 + k`, probability `prob (1-r)^k`.
    pub(crate) fn family(&mut self, delta2: i64, next: BoundaryClass, prob: PolyQ) {
        self.entries.push(KernelEntry {
            delta: Delta::Exact(HalfPos::from_doubled(delta2)),
            next,
            prob: prob.into(),
            family: true,
        });
    }

    pub(crate) fn build(self, n: usize, sources: &[BoundaryClass]) -> Kernel {
        Kernel {
            n,
            sources: sources.to_vec(),
            entries: self.entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_parse_back() {
        for c in [
            BoundaryClass::Pair01,
            BoundaryClass::StarZero,
            BoundaryClass::S1,
            BoundaryClass::C1000,
            BoundaryClass::OneStar00,
            BoundaryClass::EStar,
        ] {
            assert_eq!(BoundaryClass::parse(c.name()), Some(c));
        }
        assert_eq!(BoundaryClass::parse("1000"), Some(BoundaryClass::C1000));
        assert_eq!(BoundaryClass::parse("nope"), None);
    }
}
