//! Canonical text form: `3*x1^2*T2 - T1 + 1`.
//!
//! Terms are printed in descending order under the polynomial's order,
//! coefficients as symmetric residues, factors in variable order. The parser
//! accepts any sum of products of integers and powers of variables, so it
//! reads back printer output exactly.

use std::fmt;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::Ring;
use super::RingError;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring();
        let field = ring.field();
        let names = ring.variable_names();
        for (k, t) in self.terms().iter().enumerate() {
            let c = field.to_signed(t.coef);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.mono.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if abs != 1 {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, name) in names.iter().enumerate() {
                let e = t.mono.exponent(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>, RingError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = s[start..i].parse::<u64>().map_err(|_| RingError::Parse(format!("integer too large at {start}")))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token::Ident(s[start..i].to_string()));
            }
            other => return Err(RingError::Parse(format!("unexpected character {other:?} at {i}"))),
        }
    }
    Ok(out)
}

impl Polynomial {
    /// Parses the canonical text form in `ring`.
    pub fn parse(ring: &Ring, s: &str) -> Result<Polynomial, RingError> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(RingError::Parse("empty input".into()));
        }
        let field = ring.field();
        let p = field.characteristic() as u64;
        let mut raw = Vec::new();
        let mut pos = 0;
        let mut first = true;
        while pos < tokens.len() {
            let mut negative = false;
            match tokens[pos] {
                Token::Plus if !first => pos += 1,
                Token::Minus => {
                    negative = true;
                    pos += 1
                }
                _ if first => {}
                ref t => return Err(RingError::Parse(format!("expected '+' or '-', found {t:?}"))),
            }
            first = false;
            let mut coef: u32 = 1;
            let mut exps = vec![0u32; ring.nvars()];
            let mut expect_factor = true;
            while expect_factor {
                match tokens.get(pos) {
                    Some(Token::Num(v)) => {
                        coef = field.mul(coef, (v % p) as u32);
                        pos += 1;
                    }
                    Some(Token::Ident(name)) => {
                        let idx = ring.variable_index(name).ok_or_else(|| RingError::UnknownVariable(name.clone()))?;
                        pos += 1;
                        let mut e = 1u32;
                        if tokens.get(pos) == Some(&Token::Caret) {
                            match tokens.get(pos + 1) {
                                Some(Token::Num(v)) => {
                                    e = u32::try_from(*v).map_err(|_| RingError::ExponentOverflow)?;
                                    pos += 2;
                                }
                                _ => return Err(RingError::Parse("expected exponent after '^'".into())),
                            }
                        }
                        exps[idx] = exps[idx].checked_add(e).ok_or(RingError::ExponentOverflow)?;
                    }
                    other => return Err(RingError::Parse(format!("expected factor, found {other:?}"))),
                }
                if tokens.get(pos) == Some(&Token::Star) {
                    pos += 1;
                } else {
                    expect_factor = false;
                }
            }
            if negative {
                coef = field.neg(coef);
            }
            let mono = Monomial::from_exponents(&exps).ok_or(RingError::ExponentOverflow)?;
            raw.push((coef, mono));
        }
        Ok(Polynomial::from_terms(ring, MonomialOrder::default(), raw))
    }
}
