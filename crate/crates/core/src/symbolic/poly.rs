//! Exact bivariate polynomials over the rationals in the noise variables
//! `e0` (forced-0 error) and `e1` (forced-1 error).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Q;

/// Exponent pair `e0^a0 * e1^a1`.
///
/// Ordered by total degree, then by `a0` descending, which is the canonical
/// term order used everywhere in printing and parsing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a0: u32,
    pub a1: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a0: 0, a1: 0 };

    pub const fn new(a0: u32, a1: u32) -> Self {
        Monomial { a0, a1 }
    }

    pub fn degree(&self) -> u32 {
        self.a0 + self.a1
    }

    /// `self | other`, i.e. `other / self` is again a monomial.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.a0 <= other.a0 && self.a1 <= other.a1
    }

    pub fn checked_div(&self, by: &Monomial) -> Option<Monomial> {
        by.divides(self)
            .then(|| Monomial::new(self.a0 - by.a0, self.a1 - by.a1))
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a0 + other.a0, self.a1 + other.a1)
    }

    /// Pure power of a single variable (or the constant monomial).
    pub fn is_pure(&self) -> bool {
        self.a0 == 0 || self.a1 == 0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.a0.cmp(&self.a0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2);
        for (name, exp) in [("e0", self.a0), ("e1", self.a1)] {
            match exp {
                0 => {}
                1 => parts.push(name.to_string()),
                k => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Polynomial in `(e0, e1)` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is semantic
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyQ {
    terms: BTreeMap<Monomial, Q>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ::default()
    }

    pub fn one() -> Self {
        PolyQ::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        PolyQ::monomial(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        PolyQ::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Q, m: Monomial) -> Self {
        let mut p = PolyQ::zero();
        p.add_term(m, c);
        p
    }

    pub fn e0() -> Self {
        PolyQ::monomial(Q::one(), Monomial::new(1, 0))
    }

    pub fn e1() -> Self {
        PolyQ::monomial(Q::one(), Monomial::new(0, 1))
    }

    /// `r = 1 - e0 - e1`.
    pub fn r() -> Self {
        PolyQ::one() - PolyQ::e0() - PolyQ::e1()
    }

    /// `1 - r = e0 + e1`.
    pub fn one_minus_r() -> Self {
        PolyQ::e0() + PolyQ::e1()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(terms: I) -> Self {
        let mut p = PolyQ::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(Monomial::ONE)
    }

    pub fn scale(&self, c: &Q) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism `Q[e0, e1] -> Q` at the point `(x0, x1)`.
    pub fn eval_at(&self, x0: &Q, x1: &Q) -> Q {
        let max0 = self.terms.keys().map(|m| m.a0).max().unwrap_or(0) as usize;
        let max1 = self.terms.keys().map(|m| m.a1).max().unwrap_or(0) as usize;
        let pow0 = powers(x0, max0);
        let pow1 = powers(x1, max1);
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            acc + c * &pow0[m.a0 as usize] * &pow1[m.a1 as usize]
        })
    }

    pub fn eval_f64(&self, x0: f64, x1: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                c.to_f64().unwrap_or(f64::NAN) * x0.powi(m.a0 as i32) * x1.powi(m.a1 as i32)
            })
            .sum()
    }

    /// Substitutes `e0 := s0` and `e1 := s1`.
    pub fn substitute(&self, s0: &PolyQ, s1: &PolyQ) -> PolyQ {
        let max0 = self.terms.keys().map(|m| m.a0).max().unwrap_or(0) as usize;
        let max1 = self.terms.keys().map(|m| m.a1).max().unwrap_or(0) as usize;
        let mut pow0 = vec![PolyQ::one()];
        for i in 0..max0 {
            let next = &pow0[i] * s0;
            pow0.push(next);
        }
        let mut pow1 = vec![PolyQ::one()];
        for i in 0..max1 {
            let next = &pow1[i] * s1;
            pow1.push(next);
        }
        let mut out = PolyQ::zero();
        for (m, c) in &self.terms {
            let t = (&pow0[m.a0 as usize] * &pow1[m.a1 as usize]).scale(c);
            out += &t;
        }
        out
    }

    /// Exact quotient by `r = 1 - e0 - e1`, if `r` divides `self`.
    pub fn div_by_r(&self) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        // View self as a polynomial in e0 with coefficients in Q[e1] and
        // divide synthetically by (e0 - s), s = 1 - e1; then self / r = -quotient.
        let d0 = self.terms.keys().map(|m| m.a0).max().unwrap_or(0);
        let mut coeffs: Vec<PolyQ> = vec![PolyQ::zero(); d0 as usize + 1];
        for (m, c) in &self.terms {
            coeffs[m.a0 as usize].add_term(Monomial::new(0, m.a1), c.clone());
        }
        let s = PolyQ::one() - PolyQ::e1();
        let mut quotient: Vec<PolyQ> = vec![PolyQ::zero(); d0 as usize];
        let mut carry = PolyQ::zero();
        for k in (0..=d0 as usize).rev() {
            let val = &coeffs[k] + &(&s * &carry);
            if k == 0 {
                if !val.is_zero() {
                    return None;
                }
            } else {
                quotient[k - 1] = val.clone();
                carry = val;
            }
        }
        let mut out = PolyQ::zero();
        for (k, qk) in quotient.into_iter().enumerate() {
            for (m, c) in qk.terms {
                out.add_term(Monomial::new(k as u32, m.a1), -c);
            }
        }
        Some(out)
    }

    /// Monomials with a negative coefficient, in canonical order.
    pub fn negative_terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().filter(|(_, c)| c.is_negative())
    }

    /// Canonical text form, e.g. `1 - 3/2*e0^2*e1`.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn powers(x: &Q, max: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Q::one());
    for i in 0..max {
        let next = &out[i] * x;
        out.push(next);
    }
    out
}

pub fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&mag))?;
            }
        }
        Ok(())
    }
}

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -(self.clone())
    }
}

impl AddAssign<&PolyQ> for PolyQ {
    fn add_assign(&mut self, rhs: &PolyQ) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&PolyQ> for PolyQ {
    fn sub_assign(&mut self, rhs: &PolyQ) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let mut out = PolyQ::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<PolyQ> for PolyQ {
            type Output = PolyQ;
            fn $method(self, rhs: PolyQ) -> PolyQ {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&PolyQ> for PolyQ {
            type Output = PolyQ;
            fn $method(self, rhs: &PolyQ) -> PolyQ {
                (&self).$method(rhs)
            }
        }
        impl $tr<PolyQ> for &PolyQ {
            type Output = PolyQ;
            fn $method(self, rhs: PolyQ) -> PolyQ {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::q;

    #[test]
    fn square_of_sum_expands() {
        let s = PolyQ::e0() + PolyQ::e1();
        let sq = s.pow(2);
        assert_eq!(sq.to_string(), "e0^2 + 2*e0*e1 + e1^2");
    }

    #[test]
    fn canonical_format_of_mixed_term() {
        let p = PolyQ::one() + PolyQ::monomial(q(-3, 2), Monomial::new(2, 1));
        assert_eq!(p.to_string(), "1 - 3/2*e0^2*e1");
        assert_eq!(PolyQ::zero().to_string(), "0");
        assert_eq!((-PolyQ::e1()).to_string(), "-e1");
    }

    #[test]
    fn monomial_order_is_degree_then_e0_descending() {
        let mut ms = vec![
            Monomial::new(0, 2),
            Monomial::new(1, 0),
            Monomial::new(2, 0),
            Monomial::ONE,
            Monomial::new(1, 1),
            Monomial::new(0, 1),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Monomial::ONE,
                Monomial::new(1, 0),
                Monomial::new(0, 1),
                Monomial::new(2, 0),
                Monomial::new(1, 1),
                Monomial::new(0, 2),
            ]
        );
    }

    #[test]
    fn r_divides_its_multiples_only() {
        let p = PolyQ::e0() * PolyQ::e1() + PolyQ::int(3);
        let pr = &p * &PolyQ::r();
        assert_eq!(pr.div_by_r(), Some(p.clone()));
        assert_eq!(p.div_by_r(), None);
        assert_eq!(PolyQ::r().div_by_r(), Some(PolyQ::one()));
    }

    #[test]
    fn substitute_r_identity() {
        // e0 := 1 - e1 - r' with r' = r itself returns e0.
        let s0 = PolyQ::one() - PolyQ::e1() - PolyQ::r();
        assert_eq!(PolyQ::e0().substitute(&s0, &PolyQ::e1()), PolyQ::e0());
        let p = PolyQ::r().pow(3);
        assert_eq!(p.substitute(&PolyQ::e0(), &PolyQ::e1()), p);
    }
}
