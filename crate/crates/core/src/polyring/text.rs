//! Text form shared by the CLI and fixtures.
//!
//! ```text
//! poly   := term ("+" term)*
//! term   := factor ("*" factor)*
//! factor := "0xHEX" | "0" | "1" | var ("^" digits)?
//! ```
//!
//! Whitespace is ignored. The printer emits terms in decreasing graded-lex
//! order with a `0xHEX*` prefix only when the coefficient is not 1, so
//! printing a parsed canonical string reproduces it byte for byte.

use std::fmt;

use super::{Monomial, TriPoly, UniPoly};
use crate::gf2n::{parse_hex, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub(crate) fn render_term(c: u32, var: &str, is_const: bool) -> String {
    match (c, is_const) {
        (1, true) => "1".to_string(),
        (_, true) => format!("{c:#x}"),
        (1, false) => var.to_string(),
        (_, false) => format!("{c:#x}*{var}"),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [char],
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn poly(&mut self) -> Result<Vec<(u32, [u32; 3])>, ParseError> {
        let mut terms = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c != '+' {
                return self.err(self.pos, format!("expected `+` or end of input, found `{c}`"));
            }
            self.bump();
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(u32, [u32; 3]), ParseError> {
        let mut coeff = 1u32;
        let mut exps = [0u32; 3];
        loop {
            self.factor(&mut coeff, &mut exps)?;
            if self.peek() == Some('*') {
                self.bump();
            } else {
                return Ok((coeff, exps));
            }
        }
    }

    fn factor(&mut self, coeff: &mut u32, exps: &mut [u32; 3]) -> Result<(), ParseError> {
        let (start, w) = self.word();
        if w.is_empty() {
            return match self.peek() {
                Some(c) => self.err(self.pos, format!("expected a coefficient or variable, found `{c}`")),
                None => self.err(self.pos, "unexpected end of input"),
            };
        }
        if w.starts_with(|c: char| c.is_ascii_digit()) {
            let Some(bits) = parse_hex(w) else {
                return self.err(start, format!("bad coefficient literal `{w}` (expected 0xHEX)"));
            };
            if !self.field.contains(bits) {
                return self.err(start, format!("coefficient `{w}` does not fit in {}", self.field));
            }
            *coeff = self.field.mul(*coeff, bits);
            return Ok(());
        }
        let mut chars = w.chars();
        let v = chars.next().unwrap();
        let Some(slot) = self.vars.iter().position(|&c| c == v).filter(|_| chars.next().is_none())
        else {
            let allowed: String = self.vars.iter().collect();
            return self.err(start, format!("unknown variable `{w}` (allowed: {allowed})"));
        };
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            let (epos, digits) = self.word();
            e = match digits.parse::<u32>() {
                Ok(e) if digits.chars().all(|c| c.is_ascii_digit()) => e,
                _ => return self.err(epos, format!("bad exponent `{digits}`")),
            };
        }
        exps[slot] = exps[slot].saturating_add(e);
        Ok(())
    }
}

fn parse_terms(field: &Field, src: &str, vars: &[char]) -> Result<Vec<(u32, [u32; 3])>, ParseError> {
    let mut p = Parser {
        src,
        pos: 0,
        vars,
        field,
    };
    p.poly()
}

/// Parses a univariate polynomial in `x`.
pub fn parse_uni(field: &Field, src: &str) -> Result<UniPoly, ParseError> {
    let terms = parse_terms(field, src, &['x'])?;
    Ok(UniPoly::from_terms(field, terms.into_iter().map(|(c, e)| (e[0], c))))
}

/// Parses a trivariate polynomial in `x`, `y`, `z`.
pub fn parse_tri(field: &Field, src: &str) -> Result<TriPoly, ParseError> {
    let terms = parse_terms(field, src, &['x', 'y', 'z'])?;
    let mut out = Vec::with_capacity(terms.len());
    for (c, e) in terms {
        if e.iter().any(|&k| k > u16::MAX as u32) {
            return Err(ParseError {
                pos: 0,
                msg: "exponent too large for a trivariate term".into(),
            });
        }
        out.push((Monomial::new(e[0] as u16, e[1] as u16, e[2] as u16), c));
    }
    Ok(TriPoly::from_terms(field, out))
}
