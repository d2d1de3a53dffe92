//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! EXPR     := TERM (('+'|'-') TERM)*
//! TERM     := '-'? FACTOR ('*' FACTOR)*
//! FACTOR   := BASE ('^' UINT)?
//! BASE     := RATIONAL | COORD | '(' EXPR ')'
//! RATIONAL := '-'? UINT ('/' UINT)?
//! ```
//!
//! A leading `-` on a term negates the whole term, so `-2^2` is `-4`. Inside a
//! term (after `*`) a `-` can only begin a rational literal: `x1*-2^2` is `4*x1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::chart::ChartSpace;
use super::poly::Poly;
use super::{Rational, SymError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SymError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((Tok::Int(n), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_owned()), col));
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(SymError::Syntax {
                pos: col,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    out.push((Tok::End, text.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    space: &'a Arc<ChartSpace>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, SymError> {
        Err(SymError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Poly, SymError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, SymError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<Poly, SymError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let exp = match self.bump() {
            (Tok::Int(n), _) => n,
            _ => return Err(SymError::BadExponent { pos }),
        };
        if *self.peek() == Tok::Slash {
            return Err(SymError::BadExponent { pos });
        }
        let exp = exp.to_u32().ok_or(SymError::BadExponent { pos })?;
        Ok(base.pow(exp))
    }

    fn base(&mut self) -> Result<Poly, SymError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                match self.peek() {
                    Tok::Int(_) => Ok(-self.rational()?),
                    _ => self.syntax("expected a number after '-'"),
                }
            }
            Tok::Int(_) => self.rational(),
            Tok::Ident(name) => {
                let pos = self.pos();
                self.bump();
                match self.space.index_of(&name) {
                    Some(i) => Poly::var(self.space, i),
                    None => Err(SymError::UnknownIdentifier { name, pos }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of expression"),
            t => self.syntax(format!("unexpected {}", describe(&t))),
        }
    }

    fn rational(&mut self) -> Result<Poly, SymError> {
        let num = match self.bump() {
            (Tok::Int(n), _) => n,
            _ => unreachable!("caller checked for an integer"),
        };
        let den = if *self.peek() == Tok::Slash {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                (Tok::Int(d), _) if d.is_zero() => {
                    return Err(SymError::Syntax { pos, message: "zero denominator".into() })
                }
                (Tok::Int(d), _) => d,
                _ => return Err(SymError::Syntax { pos, message: "expected a denominator".into() }),
            }
        } else {
            BigInt::from(1)
        };
        Ok(Poly::constant(self.space, Rational::new(num, den)))
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

/// Parses `text` into the canonical polynomial it denotes on `space`.
///
/// Error positions are 1-based character columns within `text`.
pub fn parse_expr(text: &str, space: &Arc<ChartSpace>) -> Result<Poly, SymError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, space };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t => {
            let t = describe(t);
            p.syntax(format!("unexpected {t} after expression"))
        }
    }
}
