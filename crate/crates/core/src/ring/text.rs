//! Text form of polynomials: `c * x[e,i,j] * x[e',i',j']^n` terms joined by
//! `+`/`-`, indices 1-based, parameters written `t[k]`.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use super::{EvenFraction, Monomial, Parity, Polynomial, Rational, Var};
use crate::error::{Error, Result};

/// Resolves edge names and variable parities for a fixed representation
/// space.
pub trait VarNames {
    fn edge_name(&self, edge: usize) -> String;
    fn edge_index(&self, name: &str) -> Option<usize>;
    /// Parity of entry `(row, col)` (0-based), or `None` if out of range.
    fn var_parity(&self, edge: usize, row: usize, col: usize) -> Option<Parity>;
}

pub fn format_var(v: &Var, names: &dyn VarNames) -> String {
    if v.is_param() {
        format!("t[{}]", v.row + 1)
    } else {
        format!(
            "x[{},{},{}]",
            names.edge_name(v.edge as usize),
            v.row + 1,
            v.col + 1
        )
    }
}

fn format_monomial(m: &Monomial, names: &dyn VarNames) -> String {
    m.factors()
        .iter()
        .map(|(v, k)| {
            if *k == 1 {
                format_var(v, names)
            } else {
                format!("{}^{}", format_var(v, names), k)
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Canonical printing; `0` for the zero polynomial.
pub fn format_polynomial(p: &Polynomial, names: &dyn VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            write!(out, "{abs}").unwrap();
        } else {
            if !abs.is_one() {
                write!(out, "{abs} * ").unwrap();
            }
            out.push_str(&format_monomial(m, names));
        }
    }
    out
}

/// `num` or `(num) / (d₁)^k₁ * (d₂)`; denominator factors in their stored
/// order.
pub fn format_fraction(f: &EvenFraction, names: &dyn VarNames) -> String {
    let num = format_polynomial(f.numerator(), names);
    let dens: Vec<String> = f
        .denominator_factors()
        .map(|(d, k)| {
            let d = format!("({})", format_polynomial(d, names));
            if k == 1 {
                d
            } else {
                format!("{d}^{k}")
            }
        })
        .collect();
    if dens.is_empty() {
        num
    } else {
        format!("({num}) / {}", dens.join(" * "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a dyn VarNames,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Format(format!("column {}: {}", self.pos + 1, msg.into())))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("number out of range"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..]
            .starts_with(|c: char| !c.is_whitespace() && c != ',' && c != ']' && c != '[')
        {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
        if start == self.pos {
            return self.err("expected an edge id");
        }
        Ok(&self.src[start..self.pos])
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        let mut q = Rational::from_integer(n.into());
        if self.eat('/') {
            let d = self.integer()?;
            if d == 0 {
                return self.err("zero denominator");
            }
            q /= Rational::from_integer(d.into());
        }
        Ok(q)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            let k = self.integer()?;
            u32::try_from(k).or_else(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    /// One factor; returns either a scalar or a variable with exponent.
    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Factor::Scalar(self.rational()?)),
            Some('x') => {
                self.pos += 1;
                self.expect('[')?;
                let at = self.pos;
                let name = self.ident()?;
                let Some(edge) = self.names.edge_index(name) else {
                    self.pos = at;
                    return self.err(format!("unknown edge '{name}'"));
                };
                self.expect(',')?;
                let i = self.integer()? as usize;
                self.expect(',')?;
                let j = self.integer()? as usize;
                self.expect(']')?;
                let parity = (i >= 1 && j >= 1)
                    .then(|| self.names.var_parity(edge, i - 1, j - 1))
                    .flatten();
                let Some(parity) = parity else {
                    return self.err(format!("index ({i},{j}) out of range for edge '{name}'"));
                };
                let k = self.exponent()?;
                Ok(Factor::Var(Var::new(edge, i - 1, j - 1, parity), k))
            }
            Some('t') => {
                self.pos += 1;
                self.expect('[')?;
                let k = self.integer()? as usize;
                self.expect(']')?;
                if k == 0 {
                    return self.err("parameter index starts at 1");
                }
                let e = self.exponent()?;
                Ok(Factor::Var(Var::param(k - 1), e))
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut coef = Rational::one();
        let mut vars = Vec::new();
        loop {
            match self.factor()? {
                Factor::Scalar(q) => coef *= q,
                Factor::Var(v, k) => {
                    for _ in 0..k {
                        vars.push(v);
                    }
                }
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(Polynomial::product_of(coef, &vars))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut negate = self.eat('-');
        if !negate {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            out = if negate { &out - &t } else { &out + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

enum Factor {
    Scalar(Rational),
    Var(Var, u32),
}

/// Parses the text form; odd factors may appear in any order and the Koszul
/// sign of sorting them is applied. A lone `0` parses to zero.
pub fn parse_polynomial(src: &str, names: &dyn VarNames) -> Result<Polynomial> {
    let mut p = Parser { src, pos: 0, names };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let out = p.polynomial()?;
    Ok(if out.terms().all(|(_, c)| c.is_zero()) {
        Polynomial::zero()
    } else {
        out
    })
}
