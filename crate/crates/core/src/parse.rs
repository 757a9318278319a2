//! Text syntax for polynomials.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := integer | variable ('^' integer)?
//! ```
//! Whitespace is insignificant and integer coefficients are reduced modulo `p`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};

const MAX_EXPONENT: u64 = 1 << 31;

/// Parse `text` as an element of the polynomial ring underlying `ring`.
pub fn parse_polynomial(text: &str, ring: &RingDescriptor) -> Result<Polynomial> {
    parse_polynomial_in(text, ring.poly_ring())
}

pub(crate) fn parse_polynomial_in(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        ring,
        len: text.len(),
    }
    .parse()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.len) + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let field = *self.ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{c}`")),
                None => unreachable!(),
            };
            first = false;
            let (mono, coef) = self.term()?;
            terms.push((mono, if negative { field.neg(coef) } else { coef }));
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let field = *self.ring.field();
        let n = self.ring.nvars();
        let mut exps = vec![0u64; n];
        let mut coef = 1u32;
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = self.integer_mod(field.characteristic())?;
                    coef = field.mul(coef, v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.identifier();
                    let i = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        e = self.exponent()?;
                    }
                    exps[i] += e;
                    if exps[i] > MAX_EXPONENT {
                        return Err(Error::ExponentOverflow(exps[i]));
                    }
                }
                Some(c) => return self.err(format!("unexpected `{c}`")),
                None => return self.err("unexpected end of input"),
            }
            factors += 1;
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
        Ok((Monomial::new(&exps), coef))
    }

    fn identifier(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn integer_mod(&mut self, p: u32) -> Result<u32> {
        let mut v: u64 = 0;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                v = (v * 10 + d as u64) % p as u64;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        Ok(v as u32)
    }

    fn exponent(&mut self) -> Result<u64> {
        let mut v: u64 = 0;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                v = v.saturating_mul(10).saturating_add(d as u64);
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return self.err("expected an exponent");
        }
        if v > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(v));
        }
        Ok(v)
    }
}
