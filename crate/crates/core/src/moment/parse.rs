//! Parser for the expression DSL.
//!
//! ```text
//! expr        := [sign] term (sign term)*
//! term        := coefficient ['*' factor ('*' factor)*]
//!              | factor ('*' factor)*
//! factor      := ('U' | 'X' | 'M') digits
//! coefficient := digits ['/' digits]
//! ```
//!
//! Whitespace is ignored between tokens. Rationals are `p` or `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Atom, AtomKind, RVExpression, Term};
use crate::error::{Error, Result};
use crate::exact::Rational;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

pub(super) fn parse(text: &str) -> Result<RVExpression> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();

    p.skip_ws();
    let mut sign = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            -1
        }
        Some(b'+') => {
            p.pos += 1;
            1
        }
        _ => 1,
    };
    loop {
        terms.push(p.term(sign)?);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -1;
            }
            Some(c) => {
                return Err(p.error(format!("expected `+` or `-`, found `{}`", c as char)));
            }
        }
    }
    RVExpression::new(terms)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self, sign: i32) -> Result<Term> {
        self.skip_ws();
        let mut coeff = Rational::one();
        let mut atoms = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rational()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.factors(&mut atoms)?;
                }
            }
            Some(b'U' | b'X' | b'M') => {
                self.factors(&mut atoms)?;
            }
            Some(c) => {
                return Err(self.error(format!(
                    "expected a coefficient or an atom (U/X/M), found `{}`",
                    c as char
                )));
            }
            None => return Err(self.error("expected a term, found end of input".into())),
        }
        if sign < 0 {
            coeff = -coeff;
        }
        Term::new(coeff, atoms)
    }

    /// `factor ('*' factor)*`
    fn factors(&mut self, atoms: &mut Vec<Atom>) -> Result<()> {
        loop {
            atoms.push(self.factor()?);
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn factor(&mut self) -> Result<Atom> {
        self.skip_ws();
        let kind = match self.peek() {
            Some(b'U') => AtomKind::Uniform,
            Some(b'X') => AtomKind::ExpGamma,
            Some(b'M') => AtomKind::Mixture,
            Some(c) => {
                return Err(self.error(format!("expected atom kind U, X or M, found `{}`", c as char)));
            }
            None => return Err(self.error("expected an atom, found end of input".into())),
        };
        self.pos += 1;
        let id = self.integer()?;
        if id.is_zero() {
            return Err(self.error("atom ids start at 1".into()));
        }
        let id = u32::try_from(&id).map_err(|_| self.error(format!("atom id `{id}` too large")))?;
        Ok(Atom::new(kind, id))
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.integer()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(self.error("zero denominator".into()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits".into()));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string parses"))
    }
}
