//! Exact parser for polynomial expressions such as `x^6 - 4*x^5 + 8*(1+u)*x^4`.
//!
//! Supports `+ - * / ^` (also `**`), parentheses, integer literals, and names.
//! A number directly followed by a name or a parenthesis multiplies
//! (`2x`, `8(1+u)`). Division and negative powers are accepted only for
//! single-term operands, so the result is always a Laurent polynomial.

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else {
            let op = match c {
                '\u{2212}' => '-',
                '\u{b7}' | '\u{d7}' => '*',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
            };
            out.push(Tok::Op(op));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let inv = d
                    .unit_inverse()
                    .ok_or_else(|| Error::Parse(format!("division by {d}: only single terms may divide")))?;
                acc = &acc * &inv;
            } else if matches!(self.peek(), Some(Tok::Name(_)) | Some(Tok::Num(_)) | Some(Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e: i64 = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let neg_inner = self.eat('-');
                let n = match self.toks.get(self.pos) {
                    Some(Tok::Num(n)) => n.clone(),
                    _ => return Err(Error::Parse("expected integer exponent".into())),
                };
                self.pos += 1;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')' after exponent".into()));
                }
                let n: i64 = (&n).try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                if neg_inner {
                    -n
                } else {
                    n
                }
            }
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        let e = if neg { -e } else { e };
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            let inv = base
                .unit_inverse()
                .ok_or_else(|| Error::Parse(format!("negative power of {base}: only single terms allowed")))?;
            Ok(inv.pow((-e) as u32))
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                Ok(MultiPoly::named(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<MultiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {} of {s:?}", p.pos)));
    }
    Ok(e)
}
