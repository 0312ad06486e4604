//! ASCII polynomial grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::poly::Polynomial;
use crate::polyring::ring::Ring;

pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
    /// Offset added to reported positions (for embedded expressions).
    pub base: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0, base: 0 }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.base + self.pos,
            msg: msg.into(),
        }
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    pub fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some((start, &self.src[start..self.pos]))
    }
}

struct Parser<'a, 'r> {
    cur: Cursor<'a>,
    ring: &'r Arc<Ring>,
}

impl Parser<'_, '_> {
    fn expr(&mut self) -> Result<Polynomial> {
        self.cur.skip_ws();
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = if self.cur.eat('-') {
            true
        } else {
            self.cur.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.cur.eat('+') {
                negate = false;
            } else if self.cur.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.cur.skip_ws();
            let explicit = self.cur.eat('*');
            self.cur.skip_ws();
            let starts_atom = matches!(self.cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(');
            if !explicit && !starts_atom {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.cur.eat('^') {
            let start = self.cur.pos;
            let e = self.cur.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                pos: self.cur.base + start,
                msg: "exponent out of range".into(),
            })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.cur.skip_ws();
        match self.cur.peek() {
            Some('(') => {
                self.cur.pos += 1;
                let e = self.expr()?;
                self.cur.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.cur.integer()?;
                let save = self.cur.pos;
                // `a/b` only between integer literals
                if self.cur.eat('/') {
                    let dpos = self.cur.pos;
                    let den = self.cur.integer()?;
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            pos: self.cur.base + dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    let c = self.ring.field().from_fraction(&num, &den).map_err(|_| {
                        Error::Syntax {
                            pos: self.cur.base + dpos,
                            msg: "denominator vanishes in the coefficient field".into(),
                        }
                    })?;
                    return Ok(Polynomial::constant(self.ring, c));
                }
                self.cur.pos = save;
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&num)))
            }
            Some(_) => match self.cur.identifier() {
                Some((pos, name)) => match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: self.cur.base + pos,
                    }),
                },
                None => Err(self.cur.error("unexpected character")),
            },
            None => Err(self.cur.error("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_expr_at(cur: &mut Cursor<'_>, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut p = Parser {
        cur: Cursor {
            src: cur.src,
            pos: cur.pos,
            base: cur.base,
        },
        ring,
    };
    let out = p.expr()?;
    cur.pos = p.cur.pos;
    Ok(out)
}

/// Parse a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let out = parse_expr_at(&mut cur, ring)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(out)
}
