//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integers, variable names of the target context, `+ - * / ^`,
//! parentheses and unary minus. Division is only allowed by a nonzero
//! constant, `^` takes a nonnegative integer literal.

use num_bigint::BigInt;
use num_traits::One;

use super::{discriminant::weierstrass_check, Ctx, MPoly, VarContext};
use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
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
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character '{c}' at position {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
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

    fn expr(&mut self) -> Result<MPoly<Rat>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rat>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c =
                    d.as_constant().ok_or_else(|| Error::parse("division is only allowed by a nonzero constant"))?;
                acc = acc.scale(&(Rat::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<Rat>> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<Rat>> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(Error::parse("exponent must be a nonnegative integer literal")),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| Error::parse("exponent too large"))?;
            if e == 0 {
                return Ok(MPoly::one(self.ctx));
            }
            if base.is_zero() {
                return Ok(base);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly<Rat>> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(self.ctx, Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = resolve(self.ctx, &name).ok_or_else(|| {
                    Error::parse(format!("unknown variable '{name}' (known: {})", self.ctx.names().join(", ")))
                })?;
                Ok(MPoly::var(self.ctx, idx, Rat::one()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse("missing ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(Error::parse(format!("unexpected token {t:?}"))),
            None => Err(Error::parse("unexpected end of expression")),
        }
    }
}

/// `X` and `X1` name the same variable when there is a single base variable.
fn resolve(ctx: &VarContext, name: &str) -> Option<usize> {
    ctx.index_of(name).or_else(|| match name {
        "X1" if ctx.d() == 1 && !ctx.is_t() => ctx.index_of("X"),
        "X" if ctx.d() == 1 => Some(0),
        _ => None,
    })
}

/// Parses `s` into a polynomial over the variables of `ctx`.
pub fn parse_poly(s: &str, ctx: &Ctx) -> Result<MPoly<Rat>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = Parser { toks, pos: 0, ctx };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing input after token {}", p.pos)));
    }
    Ok(out)
}

/// Largest `i` among the variables `Xi` mentioned in `s`; `X` counts as `X1`.
pub fn infer_dimension(s: &str) -> Result<usize> {
    let mut d = 0;
    for t in lex(s)? {
        if let Tok::Ident(name) = t {
            if name == "X" {
                d = d.max(1);
            } else if let Some(idx) = name.strip_prefix('X') {
                let i: usize = idx.parse().map_err(|_| Error::parse(format!("unknown variable '{name}'")))?;
                if i == 0 {
                    return Err(Error::parse("variables are numbered from X1"));
                }
                d = d.max(i);
            }
        }
    }
    Ok(d.max(1))
}

/// Parses a polynomial in `X1..Xd, Y`; `d` is inferred when not given.
pub fn parse_xy(s: &str, d: Option<usize>) -> Result<MPoly<Rat>> {
    let d = match d {
        Some(0) => return Err(Error::invalid("d must be positive")),
        Some(d) => d,
        None => infer_dimension(s)?,
    };
    if d + 2 > super::MAX_VARS {
        return Err(Error::invalid(format!("at most {} base variables are supported", super::MAX_VARS - 2)));
    }
    parse_poly(s, &VarContext::xy(d))
}

/// Parses and checks that the result is a monic Weierstrass polynomial in `Y`.
pub fn parse_weierstrass(s: &str, d: Option<usize>) -> Result<MPoly<Rat>> {
    let f = parse_xy(s, d)?;
    weierstrass_check(&f)?;
    Ok(f)
}
