//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*' | '/' | <juxtaposition>) power)*
//! power  := atom ['^' exponent]
//! atom   := 'x' | 'y' | integer | '(' expr ')'
//! exponent := ['-'] integer | '(' ['+'|'-'] integer ['/' integer] ')'
//! ```
//! Division is only allowed by a single term. Negative or fractional powers
//! are only allowed on a single term whose coefficient has the needed root.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{PuiseuxPoly, Ring};
use super::rational::{pow_exp, Exp, Rational};
use super::AlgError;

pub fn parse(text: &str) -> Result<PuiseuxPoly, AlgError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses and checks that every exponent is allowed in `ring`.
pub fn parse_in(text: &str, ring: Ring) -> Result<PuiseuxPoly, AlgError> {
    parse(text)?.with_ring(ring)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn lift(&self, r: Result<PuiseuxPoly, AlgError>) -> Result<PuiseuxPoly, AlgError> {
        r.map_err(|e| AlgError::Parse { pos: self.pos, msg: e.to_string() })
    }

    fn expr(&mut self) -> Result<PuiseuxPoly, AlgError> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.lift(acc.checked_add(&t))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.lift(acc.checked_sub(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PuiseuxPoly, AlgError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.lift(acc.checked_mul(&f))?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let inv = invert_term(&d).ok_or(AlgError::Parse {
                        pos: at,
                        msg: "can only divide by a single nonzero term".into(),
                    })?;
                    acc = self.lift(acc.checked_mul(&inv))?;
                }
                Some(c) if c == b'x' || c == b'y' || c == b'(' || c.is_ascii_digit() => {
                    let f = self.power()?;
                    acc = self.lift(acc.checked_mul(&f))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<PuiseuxPoly, AlgError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = self.exponent()?;
        if *e.denom() == 1 && *e.numer() >= 0 {
            let k = u32::try_from(*e.numer()).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        let (m, c) = base.as_single_term().ok_or(AlgError::Parse {
            pos: at,
            msg: "negative or fractional powers need a single-term base".into(),
        })?;
        let c = pow_exp(&c, e).ok_or(AlgError::Parse {
            pos: at,
            msg: format!("coefficient {c} has no rational power {e}"),
        })?;
        Ok(PuiseuxPoly::term(c, m.scaled(e)))
    }

    fn atom(&mut self) -> Result<PuiseuxPoly, AlgError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(PuiseuxPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(PuiseuxPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(PuiseuxPoly::constant(Rational::from_integer(self.integer()?))),
            Some(_) => Err(self.err("expected x, y, a number or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<i64, AlgError> {
        let at = self.pos;
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| AlgError::Parse { pos: at, msg: "exponent out of range".into() })
    }

    fn exponent(&mut self) -> Result<Exp, AlgError> {
        if self.eat(b'(') {
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let n = self.small_int()?;
            let d = if self.eat(b'/') { self.small_int()? } else { 1 };
            if d == 0 {
                return Err(self.err("zero exponent denominator"));
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            Ok(Exp::new(if neg { -n } else { n }, d))
        } else {
            let neg = self.eat(b'-');
            let n = self.small_int()?;
            Ok(Exp::from_integer(if neg { -n } else { n }))
        }
    }
}

fn invert_term(p: &PuiseuxPoly) -> Option<PuiseuxPoly> {
    let (m, c) = p.as_single_term()?;
    if c.is_zero() {
        return None;
    }
    if m.is_one() {
        return Some(PuiseuxPoly::constant(Rational::one() / c));
    }
    Some(PuiseuxPoly::term(Rational::one() / c, m.scaled(Exp::from_integer(-1))))
}
