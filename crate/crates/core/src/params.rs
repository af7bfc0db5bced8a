use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{fmt_q, Q};

/// Largest denominator kept when a decimal input is rationalised.
pub const MAX_DECIMAL_DENOM: i64 = 1_000_000;

/// Error probabilities `(eps0, eps1)` and the open-site probability `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub eps0: f64,
    pub eps1: f64,
    pub r: f64,
    /// True iff both errors are at most 1/2 and not both zero.
    pub theorem_scope: bool,
    #[serde(skip)]
    exact: Option<(Q, Q)>,
}

impl NoiseParams {
    pub fn exact(&self) -> Option<&(Q, Q)> {
        self.exact.as_ref()
    }

    /// Exact `(eps0, eps1)`, rationalising the floats if no exact pair was given.
    pub fn exact_or_approx(&self) -> (Q, Q) {
        match &self.exact {
            Some(p) => p.clone(),
            None => (approx_f64(self.eps0), approx_f64(self.eps1)),
        }
    }

    pub fn describe(&self) -> String {
        match &self.exact {
            Some((a, b)) => format!("eps0={} eps1={}", fmt_q(a), fmt_q(b)),
            None => format!("eps0={} eps1={}", self.eps0, self.eps1),
        }
    }
}

/// Checks `eps0, eps1 >= 0` and `eps0 + eps1 <= 1`. Never clamps.
pub fn validate_noise(eps0: f64, eps1: f64) -> Result<NoiseParams> {
    for (name, v) in [("eps0", eps0), ("eps1", eps1)] {
        if !v.is_finite() {
            return Err(Error::NonFinite { name });
        }
        if v < 0.0 {
            return Err(Error::NegativeProbability {
                name,
                value: v.to_string(),
            });
        }
    }
    if eps0 + eps1 > 1.0 {
        return Err(Error::MassExceeded {
            sum: (eps0 + eps1).to_string(),
        });
    }
    Ok(NoiseParams {
        eps0,
        eps1,
        r: (1.0 - eps0 - eps1).max(0.0),
        theorem_scope: eps0 <= 0.5 && eps1 <= 0.5 && (eps0 > 0.0 || eps1 > 0.0),
        exact: None,
    })
}

/// Exact variant of [`validate_noise`].
pub fn validate_noise_exact(eps0: Q, eps1: Q) -> Result<NoiseParams> {
    for (name, v) in [("eps0", &eps0), ("eps1", &eps1)] {
        if v.is_negative() {
            return Err(Error::NegativeProbability {
                name,
                value: fmt_q(v),
            });
        }
    }
    let sum = &eps0 + &eps1;
    if sum > Q::one() {
        return Err(Error::MassExceeded { sum: fmt_q(&sum) });
    }
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    let f0 = eps0.to_f64().unwrap_or(f64::NAN);
    let f1 = eps1.to_f64().unwrap_or(f64::NAN);
    Ok(NoiseParams {
        eps0: f0,
        eps1: f1,
        r: (Q::one() - &sum).to_f64().unwrap_or(f64::NAN),
        theorem_scope: eps0 <= half && eps1 <= half && !(eps0.is_zero() && eps1.is_zero()),
        exact: Some((eps0, eps1)),
    })
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.125"` into an exact
/// rational. Decimals whose reduced denominator exceeds 10^6 are replaced by
/// the closest fraction with denominator at most 10^6.
pub fn parse_probability(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::BadProbability(s.to_string());
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let v = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Q::new(n, d)
    } else {
        let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        if v.denom() > &BigInt::from(MAX_DECIMAL_DENOM) {
            best_approx(&v, MAX_DECIMAL_DENOM)
        } else {
            v
        }
    };
    Ok(if neg { -v } else { v })
}

/// Parses two probabilities and validates them exactly.
pub fn noise_from_strs(eps0: &str, eps1: &str) -> Result<NoiseParams> {
    validate_noise_exact(parse_probability(eps0)?, parse_probability(eps1)?)
}

fn approx_f64(x: f64) -> Q {
    let s = format!("{x}");
    parse_probability(&s).unwrap_or_else(|_| Q::zero())
}

/// Closest rational to `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn best_approx(x: &Q, max_den: i64) -> Q {
    let max_den = BigInt::from(max_den);
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    loop {
        let (a, rem) = n.div_mod_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            let k = (&max_den - &q0) / &q1;
            let b1 = Q::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let b2 = Q::new(p1.clone(), q1.clone());
            return if (&b1 - x).abs() <= (&b2 - x).abs() { b1 } else { b2 };
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        if rem.is_zero() {
            return Q::new(p1, q1);
        }
        n = std::mem::replace(&mut d, rem);
    }
}

/// Label of a board site / realisation of one noise draw.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SiteLabel {
    Trap,
    Target,
    Open,
}

impl SiteLabel {
    pub fn to_char(self) -> char {
        match self {
            SiteLabel::Trap => 'T',
            SiteLabel::Target => 'G',
            SiteLabel::Open => '.',
        }
    }
}

/// `[0, eps1)` is a trap, `[eps1, eps1 + eps0)` a target, the rest open.
pub fn site_label(params: &NoiseParams, u: f64) -> SiteLabel {
    if u < params.eps1 {
        SiteLabel::Trap
    } else if u < params.eps1 + params.eps0 {
        SiteLabel::Target
    } else {
        SiteLabel::Open
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::q;

    #[test]
    fn validate_examples() {
        let p = validate_noise(0.1, 0.1).unwrap();
        assert!((p.r - 0.8).abs() < 1e-15);
        assert!(p.theorem_scope);
        assert!(matches!(validate_noise(0.6, 0.6), Err(Error::MassExceeded { .. })));
        assert!(matches!(validate_noise(-0.1, 0.1), Err(Error::NegativeProbability { .. })));
        assert!(matches!(validate_noise(f64::NAN, 0.1), Err(Error::NonFinite { .. })));
        let z = validate_noise(0.0, 0.0).unwrap();
        assert!(!z.theorem_scope);
        assert_eq!(z.r, 1.0);
        assert!(!validate_noise(0.6, 0.1).unwrap().theorem_scope);
    }

    #[test]
    fn labels_follow_interval_order() {
        let p = validate_noise(0.2, 0.1).unwrap();
        assert_eq!(site_label(&p, 0.05), SiteLabel::Trap);
        assert_eq!(site_label(&p, 0.15), SiteLabel::Target);
        assert_eq!(site_label(&p, 0.5), SiteLabel::Open);
        let z = validate_noise(0.0, 0.0).unwrap();
        assert_eq!(site_label(&z, 0.0), SiteLabel::Open);
    }

    #[test]
    fn parse_probabilities() {
        assert_eq!(parse_probability("1/10").unwrap(), q(1, 10));
        assert_eq!(parse_probability("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_probability("0").unwrap(), q(0, 1));
        assert_eq!(parse_probability(".5").unwrap(), q(1, 2));
        assert_eq!(parse_probability("0.3333333333").unwrap(), q(1, 3));
        assert!(parse_probability("abc").is_err());
        assert!(parse_probability("1/0").is_err());
        let p = noise_from_strs("0.7", "0.7");
        assert!(matches!(p, Err(Error::MassExceeded { .. })));
    }

    #[test]
    fn best_approx_pi() {
        let pi = parse_probability("3.14159265358979").unwrap();
        assert_eq!(best_approx(&pi, 1000), q(355, 113));
    }
}
