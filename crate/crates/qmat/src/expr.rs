//! Surface syntax for polynomials in `X1..Xd`.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | var | '(' expr ')'
//! ```
//!
//! with unsigned rational literals `digits` or `digits/digits` and
//! variables `X1..Xd`.  Parse errors carry the byte position of the
//! offending token.  [`format_poly`] emits the canonical form (terms in
//! descending lexicographic exponent order), and parsing it back yields
//! the same polynomial.

use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use crate::scalars::Rational;
use crate::spectrum::PolyV;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push((tok, start));
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(src[start..i].to_string()), start));
            }
            'X' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(parse_err(start, "expected a variable index after 'X'"));
                }
                let j: usize = src[digits_start..i]
                    .parse()
                    .map_err(|_| parse_err(digits_start, "variable index too large"))?;
                toks.push((Tok::Var(j), start));
            }
            _ => {
                return Err(parse_err(start, format!("unexpected character {c:?}")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
    d: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(tok) {
            self.idx += 1;
            Ok(())
        } else {
            Err(parse_err(self.pos(), format!("expected {what}")))
        }
    }

    fn int(&mut self, what: &str) -> Result<BigInt> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(s)) => Ok(BigInt::from_str(&s).unwrap()),
            _ => Err(parse_err(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<PolyV> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.idx += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyV> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyV> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let pos = self.pos();
        let e = self.int("an exponent")?;
        let e = u32::try_from(&e).map_err(|_| parse_err(pos, "exponent out of range"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<PolyV> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(s)) => {
                let numer = BigInt::from_str(&s).unwrap();
                if self.peek() == Some(&Tok::Slash) {
                    self.idx += 1;
                    let dpos = self.pos();
                    let denom = self.int("a denominator")?;
                    if denom.is_zero() {
                        return Err(parse_err(dpos, "zero denominator"));
                    }
                    Ok(PolyV::constant(self.d, Rational::new(numer, denom)))
                } else {
                    Ok(PolyV::constant(self.d, Rational::from(numer)))
                }
            }
            Some(Tok::Var(j)) => PolyV::var(self.d, j).map_err(|_| {
                parse_err(
                    pos,
                    format!("variable X{j} out of range (expected X1..X{})", self.d),
                )
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(parse_err(
                pos,
                "expected a rational literal, a variable, or '('",
            )),
        }
    }
}

/// Parse an expression over `X1..Xd` into a polynomial.
pub fn parse_poly(src: &str, d: usize) -> Result<PolyV> {
    let mut parser = Parser {
        toks: lex(src)?,
        idx: 0,
        end: src.len(),
        d,
    };
    let p = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return Err(parse_err(parser.pos(), "unexpected trailing input"));
    }
    Ok(p)
}

/// Canonical rendering: terms in descending lexicographic exponent order,
/// explicit `*` between factors, `^` only for exponents above 1.
pub fn format_poly(p: &PolyV) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (exps, coeff)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let negative = coeff.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = coeff.abs();
        let vars: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                if e == 1 {
                    format!("X{}", j + 1)
                } else {
                    format!("X{}^{e}", j + 1)
                }
            })
            .collect();
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}
