//! Text grammar for Laurent polynomials.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+'|'-') factor | INT | VAR power? | '(' expr ')' power?
//! power  := '^' '-'? INT
//! VAR    := 'u' DIGIT | 'x' | 'y' | 'z'
//! ```
//!
//! Whitespace is ignored. Multiplication must be written explicitly.

use num_bigint::BigInt;

use super::{ExponentVector, LaurentPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'x' => Tok::Var(1),
            b'y' => Tok::Var(2),
            b'z' => Tok::Var(3),
            b'u' => {
                match bytes.get(i + 1) {
                    Some(d @ b'1'..=b'9') => {
                        if bytes.get(i + 2).is_some_and(u8::is_ascii_digit) {
                            return Err(syntax(start, "only variables u1..u9 are supported"));
                        }
                        i += 2;
                        out.push((Tok::Var((d - b'0') as usize), start));
                        continue;
                    }
                    _ => return Err(syntax(start, "expected a digit 1-9 after `u`")),
                }
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse");
                out.push((Tok::Int(n), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    num_vars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Plus => self.factor(),
            Tok::Minus => Ok(-self.factor()?),
            Tok::Int(n) => Ok(LaurentPoly::constant(self.num_vars, n)),
            Tok::Var(i) => {
                let k = self.power()?.unwrap_or(1);
                let mut e = vec![0; self.num_vars];
                e[i - 1] = k;
                Ok(LaurentPoly::monomial(self.num_vars, e, 1))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => self.pos += 1,
                    _ => return Err(syntax(self.offset(), "expected `)`")),
                }
                let pow_at = self.offset();
                match self.power()? {
                    None => Ok(inner),
                    Some(k) if k >= 0 => Ok(inner.pow(k as u32)),
                    Some(k) => {
                        if !inner.is_unit() {
                            return Err(syntax(
                                pow_at,
                                "negative powers are only allowed for monomials",
                            ));
                        }
                        let (e, c) = inner.terms().next().unwrap();
                        let e = ExponentVector(e.iter().map(|x| x * k).collect());
                        let sign = if k % 2 == 0 { BigInt::from(1) } else { c.clone() };
                        Ok(LaurentPoly::from_terms(self.num_vars, [(e, sign)]))
                    }
                }
            }
            Tok::Star | Tok::Caret | Tok::RParen => {
                Err(syntax(at, "expected a number, variable or `(`"))
            }
        }
    }

    fn power(&mut self) -> Result<Option<i64>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let k: i64 = i64::try_from(&n).map_err(|_| syntax(at, "exponent too large"))?;
                if k > 100_000 {
                    return Err(syntax(at, "exponent too large"));
                }
                Ok(Some(if neg { -k } else { k }))
            }
            _ => Err(syntax(at, "expected an integer exponent")),
        }
    }
}

/// Parses a polynomial, inferring the variable count from the largest
/// variable index (at least 1).
pub fn parse(text: &str) -> Result<LaurentPoly> {
    parse_impl(text, None)
}

/// Parses a polynomial in exactly `num_vars` variables.
pub fn parse_with_vars(text: &str, num_vars: usize) -> Result<LaurentPoly> {
    parse_impl(text, Some(num_vars))
}

fn parse_impl(text: &str, declared: Option<usize>) -> Result<LaurentPoly> {
    let toks = tokenize(text)?;
    let max_var = toks
        .iter()
        .filter_map(|(t, _)| match t {
            Tok::Var(i) => Some(*i),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let num_vars = match declared {
        Some(d) => {
            if max_var > d {
                return Err(Error::VariableOutOfRange {
                    index: max_var,
                    num_vars: d,
                });
            }
            d
        }
        None => max_var.max(1),
    };
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        num_vars,
    };
    let f = p.expr()?;
    if p.pos != toks.len() {
        let msg = match p.peek() {
            Some(Tok::Var(_) | Tok::Int(_) | Tok::LParen) => {
                "juxtaposition is not multiplication; insert `*`"
            }
            _ => "unexpected token",
        };
        return Err(syntax(p.offset(), msg));
    }
    Ok(f)
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
