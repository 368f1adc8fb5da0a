//! Text form of polynomials.
//!
//! The strict grammar is a signed sum of terms, each term a product of an
//! optional rational coefficient and powers of variables `x1`, `x2`, ...:
//! `3/2*x1^2*x2 - x3 + 7`. The expression grammar additionally accepts
//! parentheses, nested products and integer powers of subexpressions, and is
//! expanded on the fly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::sparse::SparsePoly;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Which grammar the parser accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grammar {
    Strict,
    Expression,
}

/// Parses in the strict grammar. `arity` defaults to the largest variable index seen (at least 1).
pub fn parse_poly(src: &str, arity: Option<usize>) -> Result<SparsePoly> {
    parse_with(src, arity, Grammar::Strict)
}

/// Parses with parentheses and powers of subexpressions allowed.
pub fn parse_expression(src: &str, arity: Option<usize>) -> Result<SparsePoly> {
    parse_with(src, arity, Grammar::Expression)
}

pub fn parse_with(src: &str, arity: Option<usize>, grammar: Grammar) -> Result<SparsePoly> {
    let tokens = tokenize(src)?;
    let max_var = tokens
        .iter()
        .filter_map(|t| match t.kind {
            Tok::Var(i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let n = match arity {
        Some(n) => {
            if max_var > n {
                let pos = tokens
                    .iter()
                    .find(|t| matches!(t.kind, Tok::Var(i) if i > n))
                    .map_or(0, |t| t.pos);
                return Err(Error::parse(pos, format!("variable x{max_var} exceeds arity {n}")));
            }
            n
        }
        None => max_var.max(1),
    };
    let mut p = Parser {
        tokens,
        idx: 0,
        arity: n,
        len: src.len(),
    };
    let poly = match grammar {
        Grammar::Strict => p.strict_sum()?,
        Grammar::Expression => p.expr()?,
    };
    if p.idx < p.tokens.len() {
        return Err(Error::parse(p.tokens[p.idx].pos, "unexpected trailing input"));
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[pos..i].parse().expect("digits");
                out.push(Token { kind: Tok::Num(v), pos });
                continue;
            }
            b'x' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::parse(pos, "expected variable index after 'x'"));
                }
                let idx: usize = src[start..i]
                    .parse()
                    .map_err(|_| Error::parse(start, "variable index too large"))?;
                if idx == 0 {
                    return Err(Error::parse(start, "variable indices start at 1"));
                }
                out.push(Token { kind: Tok::Var(idx), pos });
                continue;
            }
            b'+' => out.push(Token { kind: Tok::Plus, pos }),
            b'-' => out.push(Token { kind: Tok::Minus, pos }),
            b'*' => out.push(Token { kind: Tok::Star, pos }),
            b'/' => out.push(Token { kind: Tok::Slash, pos }),
            b'^' => out.push(Token { kind: Tok::Caret, pos }),
            b'(' => out.push(Token { kind: Tok::LParen, pos }),
            b')' => out.push(Token { kind: Tok::RParen, pos }),
            _ => {
                let ch = src[pos..].chars().next().unwrap();
                return Err(Error::parse(pos, format!("unexpected character {ch:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    arity: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.idx).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.len, |t| t.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = v.clone();
                self.idx += 1;
                Ok(v)
            }
            _ => Err(Error::parse(self.pos(), "expected a number")),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        let v = self.number()?;
        u32::try_from(v).map_err(|_| Error::parse(pos, "exponent too large"))
    }

    /// `num` or `num/num`.
    fn rational(&mut self) -> Result<Rational> {
        let num = self.number()?;
        if self.eat(&Tok::Slash) {
            let pos = self.pos();
            let den = self.number()?;
            if den.is_zero() {
                return Err(Error::parse(pos, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn strict_sum(&mut self) -> Result<SparsePoly> {
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat(&Tok::Minus) {
                true
            } else if self.eat(&Tok::Plus) {
                if first {
                    return Err(Error::parse(self.tokens[self.idx - 1].pos, "leading '+'"));
                }
                false
            } else if first {
                false
            } else {
                break;
            };
            let (m, c) = self.strict_term()?;
            terms.push((m, if negative { -c } else { c }));
            first = false;
            if self.peek().is_none() {
                break;
            }
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                return Err(Error::parse(self.pos(), "expected '+' or '-' between terms"));
            }
        }
        Ok(SparsePoly::from_terms(self.arity, terms))
    }

    fn strict_term(&mut self) -> Result<(Monomial, Rational)> {
        let mut exps = vec![0u32; self.arity];
        let mut coeff = Rational::one();
        let mut has_factor = false;
        loop {
            match self.peek() {
                Some(Tok::Num(_)) => {
                    if has_factor {
                        return Err(Error::parse(self.pos(), "coefficient must come first in a term"));
                    }
                    coeff = self.rational()?;
                }
                Some(Tok::Var(i)) => {
                    let i = *i;
                    self.idx += 1;
                    let e = if self.eat(&Tok::Caret) { self.exponent()? } else { 1 };
                    exps[i - 1] += e;
                }
                _ => return Err(Error::parse(self.pos(), "expected a coefficient or variable")),
            }
            has_factor = true;
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = if self.eat(&Tok::Minus) {
            -&self.product()?
        } else {
            self.eat(&Tok::Plus);
            self.product()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.product()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<SparsePoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.power()?;
            } else if self.eat(&Tok::Slash) {
                let pos = self.pos();
                let den = self.number()?;
                if den.is_zero() {
                    return Err(Error::parse(pos, "division by zero"));
                }
                acc = acc.scale(&Rational::new(BigInt::one(), den));
            } else if matches!(self.peek(), Some(Tok::LParen | Tok::Var(_))) {
                // Juxtaposition such as `2(x1+1)` or `(x1+1)(x2-1)`.
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.idx += 1;
                Ok(SparsePoly::constant(self.arity, Rational::from_integer(v)))
            }
            Some(Tok::Var(i)) => {
                self.idx += 1;
                Ok(SparsePoly::var(self.arity, i - 1))
            }
            Some(Tok::LParen) => {
                self.idx += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(self.pos(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.idx += 1;
                Ok(-&self.power()?)
            }
            _ => Err(Error::parse(pos, "expected a number, variable or '('")),
        }
    }
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&format!("x{}", i + 1));
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

/// Canonical text: graded-lex order, unit coefficients omitted on non-constant terms.
pub fn format_poly(p: &SparsePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            write_monomial(&mut out, m);
        }
    }
    out
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}
