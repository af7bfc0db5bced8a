use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Monomial, PolyQ};
use super::{parse_poly, Q};

/// `num / r^rpow` with `r = 1 - e0 - e1`.
///
/// Kept normalised: when `rpow > 0`, `r` does not divide `num`. The normal
/// form is unique, so derived equality is semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFnQ {
    num: PolyQ,
    rpow: u32,
}

impl RatFnQ {
    pub fn new(num: PolyQ, rpow: u32) -> Self {
        let mut out = RatFnQ { num, rpow };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        RatFnQ::from_poly(PolyQ::zero())
    }

    pub fn one() -> Self {
        RatFnQ::from_poly(PolyQ::one())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFnQ { num: p, rpow: 0 }
    }

    pub fn constant(c: Q) -> Self {
        RatFnQ::from_poly(PolyQ::constant(c))
    }

    /// `1 / r`.
    pub fn inv_r() -> Self {
        RatFnQ::new(PolyQ::one(), 1)
    }

    /// `(1 - r)^p / r`, the closed form of `sum_{k >= p} (1 - r)^k`.
    pub fn one_minus_r_pow_over_r(p: u32) -> Self {
        RatFnQ::new(PolyQ::one_minus_r().pow(p), 1)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.rpow = 0;
            return;
        }
        while self.rpow > 0 {
            match self.num.div_by_r() {
                Some(q) => {
                    self.num = q;
                    self.rpow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn rpow(&self) -> u32 {
        self.rpow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&PolyQ> {
        (self.rpow == 0).then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<PolyQ> {
        (self.rpow == 0).then_some(self.num)
    }

    /// Numerator multiplied up to denominator `r^target` (`target >= rpow`).
    fn lifted(&self, target: u32) -> PolyQ {
        debug_assert!(target >= self.rpow);
        &self.num * &PolyQ::r().pow(target - self.rpow)
    }

    pub fn scale(&self, c: &Q) -> RatFnQ {
        RatFnQ::new(self.num.scale(c), self.rpow)
    }

    pub fn mul_poly(&self, p: &PolyQ) -> RatFnQ {
        RatFnQ::new(&self.num * p, self.rpow)
    }

    /// `None` when the point has `r = 0` and the denominator is nontrivial.
    pub fn eval_at(&self, x0: &Q, x1: &Q) -> Option<Q> {
        let n = self.num.eval_at(x0, x1);
        if self.rpow == 0 {
            return Some(n);
        }
        let r = Q::one() - x0 - x1;
        if r.is_zero() {
            return None;
        }
        let mut den = Q::one();
        for _ in 0..self.rpow {
            den *= &r;
        }
        Some(n / den)
    }

    pub fn eval_f64(&self, x0: f64, x1: f64) -> f64 {
        let r = 1.0 - x0 - x1;
        self.num.eval_f64(x0, x1) / r.powi(self.rpow as i32)
    }

    /// Cross-multiplied equality test, independent of normalisation.
    pub fn equals_cross(&self, other: &RatFnQ) -> bool {
        let t = self.rpow.max(other.rpow);
        self.lifted(t) == other.lifted(t)
    }

    /// Canonical text form: `POLY` or `(POLY)/r^d`.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn substitute(&self, s0: &PolyQ, s1: &PolyQ) -> Option<RatFnQ> {
        // Only the identity on r is supported for nontrivial denominators.
        let num = self.num.substitute(s0, s1);
        if self.rpow == 0 {
            return Some(RatFnQ::from_poly(num));
        }
        let r_img = PolyQ::one() - s0 - s1;
        if r_img == PolyQ::r() {
            Some(RatFnQ::new(num, self.rpow))
        } else {
            None
        }
    }
}

impl fmt::Display for RatFnQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rpow {
            0 => write!(f, "{}", self.num),
            d => write!(f, "({})/r^{}", self.num, d),
        }
    }
}

impl From<PolyQ> for RatFnQ {
    fn from(p: PolyQ) -> Self {
        RatFnQ::from_poly(p)
    }
}

impl Add<&RatFnQ> for &RatFnQ {
    type Output = RatFnQ;
    fn add(self, rhs: &RatFnQ) -> RatFnQ {
        let t = self.rpow.max(rhs.rpow);
        RatFnQ::new(self.lifted(t) + rhs.lifted(t), t)
    }
}

impl Sub<&RatFnQ> for &RatFnQ {
    type Output = RatFnQ;
    fn sub(self, rhs: &RatFnQ) -> RatFnQ {
        let t = self.rpow.max(rhs.rpow);
        RatFnQ::new(self.lifted(t) - rhs.lifted(t), t)
    }
}

impl Mul<&RatFnQ> for &RatFnQ {
    type Output = RatFnQ;
    fn mul(self, rhs: &RatFnQ) -> RatFnQ {
        RatFnQ::new(&self.num * &rhs.num, self.rpow + rhs.rpow)
    }
}

impl Neg for &RatFnQ {
    type Output = RatFnQ;
    fn neg(self) -> RatFnQ {
        RatFnQ {
            num: -&self.num,
            rpow: self.rpow,
        }
    }
}

impl Neg for RatFnQ {
    type Output = RatFnQ;
    fn neg(self) -> RatFnQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFnQ> for RatFnQ {
            type Output = RatFnQ;
            fn $method(self, rhs: RatFnQ) -> RatFnQ {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFnQ> for RatFnQ {
            type Output = RatFnQ;
            fn $method(self, rhs: &RatFnQ) -> RatFnQ {
                (&self).$method(rhs)
            }
        }
        impl $tr<RatFnQ> for &RatFnQ {
            type Output = RatFnQ;
            fn $method(self, rhs: RatFnQ) -> RatFnQ {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for RatFnQ {
    fn sum<I: Iterator<Item = RatFnQ>>(iter: I) -> Self {
        iter.fold(RatFnQ::zero(), |a, b| a + b)
    }
}

/// `sum_{k >= 0} (k + c) (1 - r)^k r * leading = leading * (c + (1 - r)/r)`.
pub fn geom_sum(c: &Q, leading: &RatFnQ) -> RatFnQ {
    let factor = &RatFnQ::constant(c.clone()) + &RatFnQ::one_minus_r_pow_over_r(1);
    leading * &factor
}

/// `sum_{k >= 0} (1 - r)^k r * leading = leading`.
pub fn geom_mass(leading: &RatFnQ) -> RatFnQ {
    leading.clone()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    a0: u32,
    a1: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RatFnJson {
    terms: Vec<TermJson>,
    rpow: u32,
}

impl Serialize for RatFnQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .num
            .terms()
            .map(|(m, c)| TermJson {
                a0: m.a0,
                a1: m.a1,
                coeff: super::fmt_q(c),
            })
            .collect();
        RatFnJson {
            terms,
            rpow: self.rpow,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFnQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RatFnJson::deserialize(d)?;
        let mut num = PolyQ::zero();
        for t in raw.terms {
            let c = parse_poly(&t.coeff)
                .ok()
                .and_then(|p| {
                    let c = p.constant_term();
                    (p == PolyQ::constant(c.clone())).then_some(c)
                })
                .ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {}", t.coeff)))?;
            num.add_term(Monomial::new(t.a0, t.a1), c);
        }
        Ok(RatFnQ::new(num, raw.rpow))
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFnQ::from_poly(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = RatFnQ::deserialize(d)?;
        let rp = f.rpow;
        f.into_poly()
            .ok_or_else(|| serde::de::Error::custom(format!("expected a polynomial, got rpow {rp}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{q, qi};

    #[test]
    fn normalisation_strips_r_factors() {
        let f = RatFnQ::new(PolyQ::r().pow(2) * PolyQ::e0(), 3);
        assert_eq!(f.rpow(), 1);
        assert_eq!(f.numerator(), &PolyQ::e0());
        assert_eq!(RatFnQ::new(PolyQ::zero(), 4).rpow(), 0);
    }

    #[test]
    fn geom_sum_zero_offset_at_half() {
        let g = geom_sum(&qi(0), &RatFnQ::one());
        assert_eq!(g, RatFnQ::one_minus_r_pow_over_r(1));
        assert_eq!(g.eval_at(&q(1, 4), &q(1, 4)), Some(qi(1)));
        // r = 1: only the k = 0 term survives.
        let g = geom_sum(&q(7, 3), &RatFnQ::one());
        assert_eq!(g.eval_at(&qi(0), &qi(0)), Some(q(7, 3)));
    }

    #[test]
    fn geom_sum_matches_truncated_series() {
        let (x0, x1) = (0.2_f64, 0.3_f64);
        let r = 1.0 - x0 - x1;
        let c = 1.5;
        let direct: f64 = (0..64).map(|k| (k as f64 + c) * (1.0 - r).powi(k) * r).sum();
        let closed = geom_sum(&q(3, 2), &RatFnQ::one()).eval_f64(x0, x1);
        assert!((direct - closed).abs() < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let f = RatFnQ::new(PolyQ::e0().scale(&q(-3, 7)) + PolyQ::one(), 2);
        let s = serde_json::to_string(&f).unwrap();
        let back: RatFnQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFnQ::inv_r().to_string(), "(1)/r^1");
        assert_eq!(
            RatFnQ::one_minus_r_pow_over_r(1).to_string(),
            "(e0 + e1)/r^1"
        );
    }
}
