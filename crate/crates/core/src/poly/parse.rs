//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | VAR | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected, so `2x0` is a syntax error.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

/// Sparse polynomial in up to three variables, keyed by exponent triple.
pub type SparsePoly = BTreeMap<[usize; 3], Rational>;

const MAX_EXPONENT: usize = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(text: &str, vars: &[&str]) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        let start = k;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Int(BigInt::from_str(&text[start..k]).expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while k < bytes.len() && bytes[k].is_ascii_alphanumeric() {
                    k += 1;
                }
                let name = &text[start..k];
                let slot = vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| syntax(start, format!("unknown variable {name:?}")))?;
                out.push((start, Tok::Var(slot)));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character {other:?}"))),
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &t, false);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.unary()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let v = self.unary()?;
                Ok(add(&SparsePoly::new(), &v, true))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let Tok::Int(e) = self.bump() else {
            return Err(syntax(pos, "expected integer exponent"));
        };
        let e: usize = e
            .try_into()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        let mut acc = constant(Rational::one());
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(constant(Rational::from_integer(n)));
                }
                self.bump();
                let dpos = self.pos();
                let Tok::Int(d) = self.bump() else {
                    return Err(syntax(dpos, "expected integer denominator"));
                };
                if d.is_zero() {
                    return Err(syntax(dpos, "zero denominator"));
                }
                Ok(constant(Rational::new(n, d)))
            }
            Tok::Var(slot) => {
                let mut e = [0; 3];
                e[slot] = 1;
                Ok(SparsePoly::from([(e, Rational::one())]))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let cpos = self.pos();
                if self.bump() != Tok::RParen {
                    return Err(syntax(cpos, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

fn constant(c: Rational) -> SparsePoly {
    let mut p = SparsePoly::new();
    if !c.is_zero() {
        p.insert([0; 3], c);
    }
    p
}

fn add(a: &SparsePoly, b: &SparsePoly, negate_b: bool) -> SparsePoly {
    let mut out = a.clone();
    for (k, v) in b {
        let v = if negate_b { -v.clone() } else { v.clone() };
        let e = out.entry(*k).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn mul(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
            *out.entry(k).or_insert_with(Rational::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Parses `text` into a sparse polynomial; `vars[k]` names exponent slot `k`.
pub fn parse_sparse(text: &str, vars: &[&str]) -> Result<SparsePoly> {
    assert!(vars.len() <= 3, "at most three variables");
    let toks = tokenize(text, vars)?;
    let mut p = Parser { toks, at: 0 };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "expected operator or end of input"));
    }
    Ok(out)
}

/// Writes `c0*m0 + c1*m1 + ...` with unit coefficients elided and signs
/// folded into the operators. Empty monomial strings denote constants.
pub(crate) fn write_terms<T: crate::scalar::Field>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (T, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_text();
        // real rationals fold their sign into the operator; anything else
        // is parenthesized
        let (neg, body) = match parse_rational(&text) {
            Ok(q) if q < Rational::zero() => (true, (-q).to_string()),
            Ok(q) => (false, q.to_string()),
            Err(_) => (false, format!("({text})")),
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        match (body.as_str(), mono.is_empty()) {
            (b, true) => write!(f, "{b}")?,
            ("1", false) => write!(f, "{mono}")?,
            (b, false) => write!(f, "{b}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `x0^2*x1`-style monomial text; empty for the constant monomial.
pub(crate) fn monomial_text(exps: &[usize], vars: &[&str]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}
