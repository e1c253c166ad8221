//! Expression parser for the canonical text form.
//!
//! Grammar: identifiers, integer literals, `+ - * / ^`, parentheses.
//! Precedence `^` > unary `-` > `* /` > `+ -`; `^` takes an integer
//! exponent (optionally negated or parenthesized). Whitespace-insensitive.
//! `parse(print(f)) == f` holds for every canonical form.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::ParseError;
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::symbols::SymbolRegistry;

struct Parser<'a> {
    reg: &'a Arc<SymbolRegistry>,
    src: &'a [u8],
    pos: usize,
}

pub fn parse_ratfunc(reg: &Arc<SymbolRegistry>, text: &str) -> Result<RatFunc, ParseError> {
    let mut p = Parser {
        reg,
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse text that must denote a polynomial (denominator constant after
/// reduction).
pub fn parse_poly(reg: &Arc<SymbolRegistry>, text: &str) -> Result<MultiPoly, ParseError> {
    let f = parse_ratfunc(reg, text)?;
    ratfunc_to_poly(&f).ok_or(ParseError::Syntax {
        pos: 0,
        msg: "expression is not a polynomial".into(),
    })
}

pub fn ratfunc_to_poly(f: &RatFunc) -> Option<MultiPoly> {
    let d = f.denom().constant_value()?;
    Some(f.numer().mul_scalar(&d.recip()))
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.factor()?;
                acc = acc.div(&rhs).map_err(|_| ParseError::Syntax {
                    pos,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let pos = self.pos;
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| ParseError::Syntax {
                pos,
                msg: "cannot invert zero".into(),
            });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.eat(b'(') {
            let e = self.exponent()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)` after exponent"));
            }
            return Ok(e);
        }
        let neg = self.eat(b'-');
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let v = i64::try_from(&n).map_err(|_| self.err("exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(
                    self.reg,
                    BigRational::from_integer(n),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.reg.lookup(name) {
                    Some(s) => Ok(RatFunc::symbol(self.reg, s)),
                    None => Err(ParseError::UnknownSymbol {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            _ => Err(self.err("expected expression")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        BigInt::from_str(text).map_err(|_| self.err("invalid integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_deformation_coefficient() {
        let r = SymbolRegistry::standard();
        let f = parse_ratfunc(&r, "2/(2*x - 3*beta)").unwrap();
        assert_eq!(f.to_string(), "2/(2*x - 3*beta)");
    }

    #[test]
    fn parses_quintic_leading_terms() {
        let r = SymbolRegistry::standard();
        let f = parse_poly(&r, "x^5 + 3*t2*x^3").unwrap();
        assert_eq!(f.degree(r.sym("x")), 5);
    }

    #[test]
    fn syntax_error_carries_position() {
        let r = SymbolRegistry::standard();
        let e = parse_ratfunc(&r, "(x").unwrap_err();
        assert_eq!(e.position(), 2);
    }

    #[test]
    fn unknown_symbol_reported() {
        let r = SymbolRegistry::standard();
        match parse_ratfunc(&r, "2*zeta") {
            Err(ParseError::UnknownSymbol { name, pos }) => {
                assert_eq!(name, "zeta");
                assert_eq!(pos, 2);
            }
            other => panic!("expected unknown symbol, got {other:?}"),
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let r = SymbolRegistry::standard();
        let a = parse_ratfunc(&r, "2/(2*x-3*beta)").unwrap();
        let b = parse_ratfunc(&r, "  2 / ( 2*x - 3*beta ) ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_exponent_inverts() {
        let r = SymbolRegistry::standard();
        let a = parse_ratfunc(&r, "x^-2").unwrap();
        let b = parse_ratfunc(&r, "1/x^2").unwrap();
        assert_eq!(a, b);
    }
}
