//! Replayable positivity certificates.
//!
//! A certificate proves `target - floor > 0` on `[0, 1/2]^2` minus the origin.
//! The verifier writes `target - floor = P + d (1-r)^p / r` and then rewrites
//! the polynomial part `P` into a lower bound, one step at a time:
//!
//! * `expand K` adds `d * sum_{k=p..K} (x+y)^k` (the dropped tail is `>= 0`),
//! * `group c A -> B` with `A | B` removes `c (A - B) >= 0`,
//! * `bound c B by D` uses `e0, e1 <= 1/2` to replace `-c B` by
//!   `-c 2^-|D| (B / D)`,
//! * `square c M1 - M2` removes `c (M1 - M2)^2 >= 0`.
//!
//! The certificate passes when the final polynomial has no negative
//! coefficient and has a positive pure power of each variable (or a positive
//! constant).
//!
//! Text form, one step per line, `#` comments:
//!
//! ```text
//! target drift2_n2_00
//! floor -1
//! tail 2 2
//! expand 2
//! group 7/2 e0^4 -> e0^5
//! bound 13/2 e0^2*e1^2 by e0*e1
//! square 1 e0 - e1
//! ```

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bounds;
use crate::error::{Error, Result};
use crate::params::parse_probability;
use crate::symbolic::{fmt_q, Monomial, PolyQ, RatFnQ, Q};

mod qstr {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

mod monostr {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Monomial, D::Error> {
        let s = String::deserialize(d)?;
        parse_monomial(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    Expand {
        upto: u32,
    },
    Group {
        #[serde(with = "qstr")]
        c: Q,
        #[serde(with = "monostr")]
        from: Monomial,
        #[serde(with = "monostr")]
        to: Monomial,
    },
    Bound {
        #[serde(with = "qstr")]
        c: Q,
        #[serde(with = "monostr")]
        term: Monomial,
        #[serde(with = "monostr")]
        by: Monomial,
    },
    Square {
        #[serde(with = "qstr")]
        c: Q,
        #[serde(with = "monostr")]
        plus: Monomial,
        #[serde(with = "monostr")]
        minus: Monomial,
    },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Expand { upto } => write!(f, "expand {upto}"),
            Step::Group { c, from, to } => write!(f, "group {} {from} -> {to}", fmt_q(c)),
            Step::Bound { c, term, by } => write!(f, "bound {} {term} by {by}", fmt_q(c)),
            Step::Square { c, plus, minus } => write!(f, "square {} {plus} - {minus}", fmt_q(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub target: String,
    #[serde(with = "qstr")]
    pub floor: Q,
    /// `(d, p)` for the `d (1-r)^p / r` part of `target - floor`.
    #[serde(default)]
    pub tail: Option<(u32, u32)>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Replay {
    /// Final polynomial, required to have nonnegative coefficients.
    pub residual: PolyQ,
    /// Squares removed along the way, as `(c, plus, minus)`.
    pub squares: Vec<(Q, Monomial, Monomial)>,
}

impl Replay {
    /// Residual plus the removed squares, e.g. `1/4*e0 + ... + (e0 - e1)^2`.
    pub fn display(&self) -> String {
        let mut s = self.residual.canonical_string();
        for (c, a, b) in &self.squares {
            let coef = if c.is_one() { String::new() } else { format!("{}*", fmt_q(c)) };
            s.push_str(&format!(" + {coef}({a} - {b})^2"));
        }
        s
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    parse_probability(s.trim())
}

pub fn parse_monomial(s: &str) -> Result<Monomial> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::ONE);
    }
    let (mut a0, mut a1) = (0u32, 0u32);
    for part in s.split('*') {
        let part = part.trim();
        let (var, exp) = match part.split_once('^') {
            Some((v, e)) => (
                v,
                e.parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad exponent in {part:?}"),
                })?,
            ),
            None => (part, 1),
        };
        match var {
            "e0" | "x" => a0 += exp,
            "e1" | "y" => a1 += exp,
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("bad monomial {s:?}"),
                })
            }
        }
    }
    Ok(Monomial::new(a0, a1))
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Self> {
        let mut target = None;
        let mut floor = Q::zero();
        let mut tail = None;
        let mut steps = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::BadStep {
                step: no + 1,
                msg: format!("{msg}: {line:?}"),
            };
            let (kw, rest) = line.split_once(char::is_whitespace).ok_or_else(|| bad("missing argument"))?;
            let rest = rest.trim();
            match kw {
                "target" => target = Some(rest.to_string()),
                "floor" => floor = parse_rational(rest).map_err(|_| bad("bad floor"))?,
                "tail" => {
                    let v: Vec<u32> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
                    if v.len() != 2 {
                        return Err(bad("tail takes d and p"));
                    }
                    tail = Some((v[0], v[1]));
                }
                "expand" => steps.push(Step::Expand {
                    upto: rest.parse().map_err(|_| bad("bad degree"))?,
                }),
                "group" => {
                    let (c, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| bad("missing terms"))?;
                    let (a, b) = rest.split_once("->").ok_or_else(|| bad("expected '->'"))?;
                    steps.push(Step::Group {
                        c: parse_rational(c)?,
                        from: parse_monomial(a)?,
                        to: parse_monomial(b)?,
                    });
                }
                "bound" => {
                    let (c, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| bad("missing terms"))?;
                    let (a, b) = rest.split_once(" by ").ok_or_else(|| bad("expected 'by'"))?;
                    steps.push(Step::Bound {
                        c: parse_rational(c)?,
                        term: parse_monomial(a)?,
                        by: parse_monomial(b)?,
                    });
                }
                "square" => {
                    let (c, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| bad("missing terms"))?;
                    let (a, b) = rest.split_once(" - ").ok_or_else(|| bad("expected 'M1 - M2'"))?;
                    steps.push(Step::Square {
                        c: parse_rational(c)?,
                        plus: parse_monomial(a)?,
                        minus: parse_monomial(b)?,
                    });
                }
                _ => return Err(bad("unknown keyword")),
            }
        }
        Ok(Certificate {
            target: target.ok_or_else(|| Error::BadStep {
                step: 0,
                msg: "missing target".into(),
            })?,
            floor,
            tail,
            steps,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("target {}\nfloor {}\n", self.target, fmt_q(&self.floor));
        if let Some((d, p)) = self.tail {
            s.push_str(&format!("tail {d} {p}\n"));
        }
        for st in &self.steps {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Expression a certificate refers to by name.
pub fn named_target(name: &str) -> Option<RatFnQ> {
    Some(match name {
        "drift2_n2_00" => bounds::drift2_n2_00(),
        "drift2_n3_1000" => bounds::drift2_n3_1000(),
        "drift1_s1_minus_i0" => &bounds::drift1_n3_s1() - &bounds::i0(),
        "drift1_s1_minus_1000" => &bounds::drift1_n3_s1() - &bounds::drift1_n3_1000(),
        "drift2_n3_d0" => bounds::drift2_n3_0000().0,
        "drift2_n3_d1" => bounds::drift2_n3_0000().1,
        _ => return None,
    })
}

fn gap(p: &PolyQ) -> Option<Error> {
    p.terms().find(|(_, c)| c.is_negative()).map(|(m, c)| Error::CertificateGap {
        term: m.to_string(),
        coeff: fmt_q(c),
    })
}

/// Replays `cert` against `target - floor`.
pub fn verify_certificate(target: &RatFnQ, floor: &Q, cert: &Certificate) -> Result<Replay> {
    let (d, p) = cert.tail.unwrap_or((0, 0));
    let mut rest = target - &RatFnQ::constant(floor.clone());
    if d > 0 {
        rest = &rest - &RatFnQ::one_minus_r_pow_over_r(p).scale(&Q::from_integer(d.into()));
    }
    let mut poly = rest.into_poly().ok_or_else(|| Error::BadStep {
        step: 0,
        msg: "target minus floor and tail is not a polynomial".into(),
    })?;
    let one_minus_r = PolyQ::one_minus_r();
    let mut expanded: Option<u32> = None;
    let mut squares = Vec::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let bad = |msg: String| Error::BadStep { step: i + 1, msg };
        match step {
            Step::Expand { upto } => {
                if d == 0 {
                    return Err(bad("nothing to expand".into()));
                }
                let start = expanded.map_or(p, |k| k + 1);
                let dq = Q::from_integer(d.into());
                for k in start..=*upto {
                    poly += &one_minus_r.pow(k).scale(&dq);
                }
                expanded = Some((*upto).max(expanded.unwrap_or(0)));
            }
            Step::Group { c, from, to } => {
                if !c.is_positive() || from == to || !from.divides(to) {
                    return Err(bad(format!("invalid grouping {step}")));
                }
                poly.add_term(*from, -c.clone());
                poly.add_term(*to, c.clone());
            }
            Step::Bound { c, term, by } => {
                let low = term
                    .checked_div(by)
                    .filter(|_| c.is_positive() && *by != Monomial::ONE)
                    .ok_or_else(|| bad(format!("invalid bound {step}")))?;
                let factor = Q::new(1.into(), num_bigint::BigInt::from(1u64) << by.degree());
                poly.add_term(*term, c.clone());
                poly.add_term(low, -(c * factor));
            }
            Step::Square { c, plus, minus } => {
                if !c.is_positive() || plus == minus {
                    return Err(bad(format!("invalid square {step}")));
                }
                let diff = &PolyQ::monomial(Q::one(), *plus) - &PolyQ::monomial(Q::one(), *minus);
                poly -= &(&diff * &diff).scale(c);
                squares.push((c.clone(), *plus, *minus));
            }
        }
    }
    if let Some(e) = gap(&poly) {
        return Err(e);
    }
    let has_const = poly.constant_term().is_positive();
    let pure = |var0: bool| {
        poly.terms()
            .any(|(m, c)| c.is_positive() && m.degree() > 0 && if var0 { m.a1 == 0 } else { m.a0 == 0 })
    };
    if !has_const && !(pure(true) && pure(false)) {
        return Err(Error::CertificateGap {
            term: "no positive witness".into(),
            coeff: "0".into(),
        });
    }
    Ok(Replay { residual: poly, squares })
}

/// Shipped certificates as `(name, text)`.
pub fn fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        ("n2_00", include_str!("../../fixtures/certificates/n2_00.cert")),
        ("n3_1000", include_str!("../../fixtures/certificates/n3_1000.cert")),
        ("s1_minus_i0", include_str!("../../fixtures/certificates/s1_minus_i0.cert")),
        ("s1_minus_1000", include_str!("../../fixtures/certificates/s1_minus_1000.cert")),
        ("n3_d0", include_str!("../../fixtures/certificates/n3_d0.cert")),
        ("n3_d1", include_str!("../../fixtures/certificates/n3_d1.cert")),
    ]
}

/// Parses and replays a certificate against its named target.
pub fn check(cert: &Certificate) -> Result<Replay> {
    let target = named_target(&cert.target).ok_or_else(|| Error::BadStep {
        step: 0,
        msg: format!("unknown target {}", cert.target),
    })?;
    verify_certificate(&target, &cert.floor, cert)
}
