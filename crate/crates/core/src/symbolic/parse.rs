//! Parser for the canonical text form.
//!
//! Accepts a superset: `x`/`y` as aliases of `e0`/`e1`, the symbol `r`
//! (`1 - e0 - e1`), parentheses, powers of parenthesised groups and implicit
//! multiplication (`3x^2y`, `2(1-r)^2`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::PolyQ;
use super::ratfn::RatFnQ;
use super::Q;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<u32> {
        let v = self.integer()?;
        u32::try_from(v).or_else(|_| self.err("exponent too large"))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'(' || c == b'x' || c == b'y' || c == b'e' || c == b'r')
    }

    fn atom(&mut self) -> Result<PolyQ> {
        let c = match self.peek() {
            Some(c) => c,
            None => return self.err("unexpected end of input"),
        };
        if c.is_ascii_digit() {
            let n = self.integer()?;
            let mut d = BigInt::one();
            // `a/b` is a rational literal only when a digit follows the slash.
            if self.peek() == Some(b'/') {
                let save = self.pos;
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    d = self.integer()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                } else {
                    self.pos = save;
                }
            }
            return Ok(PolyQ::constant(Q::new(n, d)));
        }
        if c == b'(' {
            self.pos += 1;
            let p = self.expr()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            return Ok(p);
        }
        let rest = &self.s[self.pos..];
        let (p, len) = if rest.starts_with(b"e0") {
            (PolyQ::e0(), 2)
        } else if rest.starts_with(b"e1") {
            (PolyQ::e1(), 2)
        } else if c == b'x' {
            (PolyQ::e0(), 1)
        } else if c == b'y' {
            (PolyQ::e1(), 1)
        } else if c == b'r' {
            (PolyQ::r(), 1)
        } else {
            return self.err(format!("unexpected character {:?}", c as char));
        };
        self.pos += len;
        Ok(p)
    }

    fn power(&mut self) -> Result<PolyQ> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.small_int()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<PolyQ> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<PolyQ> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(s: &str) -> Result<PolyQ> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    let p = cur.expr()?;
    if cur.peek().is_some() {
        return cur.err("trailing input");
    }
    Ok(p)
}

/// Parses `EXPR` or `EXPR / r^d` (the canonical form is `(POLY)/r^d`).
pub fn parse_ratfn(s: &str) -> Result<RatFnQ> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    let p = cur.expr()?;
    let mut d = 0;
    if cur.eat(b'/') {
        if !cur.eat(b'r') {
            return cur.err("expected 'r' after '/'");
        }
        d = if cur.eat(b'^') { cur.small_int()? } else { 1 };
    }
    if cur.peek().is_some() {
        return cur.err("trailing input");
    }
    Ok(RatFnQ::new(p, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{q, Monomial};

    #[test]
    fn parses_canonical() {
        let p = parse_poly("1 - 3/2*e0^2*e1").unwrap();
        assert_eq!(p.coeff(Monomial::new(2, 1)), q(-3, 2));
        assert_eq!(p.to_string(), "1 - 3/2*e0^2*e1");
    }

    #[test]
    fn parses_cas_style() {
        let p = parse_poly("-1-x+x^2+2x^3y - xy^3").unwrap();
        assert_eq!(p.coeff(Monomial::new(3, 1)), q(2, 1));
        assert_eq!(p.coeff(Monomial::new(1, 3)), q(-1, 1));
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn parses_groups_and_r() {
        let p = parse_poly("1/2*(1-r)^2 + x(3/2-x)r").unwrap();
        let want = (PolyQ::one_minus_r().pow(2)).scale(&q(1, 2))
            + &PolyQ::e0() * &(PolyQ::constant(q(3, 2)) - PolyQ::e0()) * PolyQ::r();
        assert_eq!(p, want);
    }

    #[test]
    fn parses_ratfn() {
        let f = parse_ratfn("(e0 + e1)/r^1").unwrap();
        assert_eq!(f, RatFnQ::one_minus_r_pow_over_r(1));
        assert_eq!(parse_ratfn("(1-r)^2/r").unwrap(), RatFnQ::one_minus_r_pow_over_r(2));
        assert!(parse_ratfn("(e0").is_err());
        assert!(parse_poly("e0 +").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("z").is_err());
    }
}
