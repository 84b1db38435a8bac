//! Text form shared by [`LaurentPoly`](super::LaurentPoly),
//! [`UniPoly`](super::UniPoly) and [`EpsSeries`](super::EpsSeries).
//!
//! ```text
//! expr    := ws [sign ws] term (ws sign ws term)* [ws sign ws bigo] ws
//!          | ws bigo ws
//! term    := factor (ws '*' ws factor)*
//! factor  := integer ['/' integer] | ident ['^' ['-'] integer]
//! bigo    := 'O(' ident ['^' ['-'] integer] ')'
//! sign    := '+' | '-'
//! ident   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! A term may hold at most one numeric factor. `0` alone is the zero
//! polynomial. Example: `-2*a^-1*b^3 + J`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTerm {
    pub coeff: Rational,
    pub factors: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedExpr {
    pub terms: Vec<ParsedTerm>,
    /// `O(var^k)` marker: (var, k).
    pub big_o: Option<(String, i64)>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
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

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let v = self.digits()?;
        let v: i64 = match i64::try_from(&v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent too large");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_owned())
    }

    fn power_suffix(&mut self) -> Result<i64, ParseError> {
        self.ws();
        if self.eat(b'^') {
            self.ws();
            self.small_int()
        } else {
            Ok(1)
        }
    }

    fn is_big_o(&self) -> bool {
        self.src[self.pos..].starts_with(b"O(")
    }

    fn big_o(&mut self) -> Result<(String, i64), ParseError> {
        self.pos += 2;
        self.ws();
        let Some(name) = self.ident() else {
            return self.err("expected variable inside O(...)");
        };
        let k = self.power_suffix()?;
        self.ws();
        if !self.eat(b')') {
            return self.err("expected ')'");
        }
        Ok((name, k))
    }

    fn term(&mut self) -> Result<ParsedTerm, ParseError> {
        let mut coeff: Option<Rational> = None;
        let mut factors = Vec::new();
        loop {
            self.ws();
            match self.peek() {
                Some(b'0'..=b'9') => {
                    if coeff.is_some() {
                        return self.err("more than one numeric factor in a term");
                    }
                    let num = self.digits()?;
                    let mut r = Rational::from_integer(num);
                    if self.eat(b'/') {
                        let den = self.digits()?;
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        r /= Rational::from_integer(den);
                    }
                    coeff = Some(r);
                }
                _ => {
                    let Some(name) = self.ident() else {
                        return self.err("expected a number or a variable");
                    };
                    let e = self.power_suffix()?;
                    factors.push((name, e));
                }
            }
            self.ws();
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(ParsedTerm {
            coeff: coeff.unwrap_or_else(Rational::one),
            factors,
        })
    }
}

pub fn parse_expr(text: &str) -> Result<ParsedExpr, ParseError> {
    let mut c = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut big_o = None;
    c.ws();
    if c.peek().is_none() {
        return c.err("empty expression");
    }
    let mut first = true;
    loop {
        c.ws();
        let mut negative = false;
        if c.eat(b'-') {
            negative = true;
        } else if !c.eat(b'+') && !first {
            return c.err("expected '+' or '-'");
        }
        c.ws();
        if c.is_big_o() {
            big_o = Some(c.big_o()?);
            c.ws();
            if c.peek().is_some() {
                return c.err("O(...) must be the final term");
            }
            break;
        }
        let mut t = c.term()?;
        if negative {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        first = false;
        c.ws();
        if c.peek().is_none() {
            break;
        }
    }
    Ok(ParsedExpr { terms, big_o })
}

/// Appends one term in canonical text form. `factors` is a list of
/// (name, exponent) pairs with nonzero exponents, already ordered.
pub(crate) fn write_term(
    out: &mut String,
    first: bool,
    coeff: &Rational,
    factors: &[(&str, i64)],
) {
    let neg = coeff < &Rational::zero();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mag = if neg { -coeff.clone() } else { coeff.clone() };
    let mut wrote = false;
    if !mag.is_one() || factors.is_empty() {
        out.push_str(&mag.to_string());
        wrote = true;
    }
    for (name, e) in factors {
        if wrote {
            out.push('*');
        }
        out.push_str(name);
        if *e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
        wrote = true;
    }
}
