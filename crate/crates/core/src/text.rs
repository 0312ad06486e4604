//! Text forms of rings, sequences and modules.
//!
//! ```text
//! ring     := field '[' var (':' weight)? (',' var (':' weight)?)* ']' ('/(' polys ')')? (':grevlex' | ':lex')?
//! field    := 'Q' | 'F' prime
//! module   := 'R' ('^' n)? twists? | 'free' n twists? | 'R/(' polys ')' twists? | 'coker' '[[' rows ']]' twists?
//! twists   := 'twists' '[' int (',' int)* ']'
//! ```
//! Matrices are row-major; a `coker` module has one generator per row.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Ideal, Matrix};
use crate::modcat::FpModule;
use crate::polyring::{MonomialOrder, Polynomial, Ring};

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
        Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + offset },
        e => e,
    }
}

/// Index of the bracket closing the one at `open`.
fn matching(s: &str, open: usize) -> Result<usize> {
    let bytes = s.as_bytes();
    let (o, c) = match bytes[open] {
        b'[' => (b'[', b']'),
        b'(' => (b'(', b')'),
        _ => return Err(syntax(open, "expected a bracket")),
    };
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        if b == o {
            depth += 1;
        } else if b == c {
            depth -= 1;
            if depth == 0 {
                return Ok(i);
            }
        }
    }
    Err(syntax(open, "unclosed bracket"))
}

/// Splits on top-level commas, returning `(offset, piece)` pairs.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth -= 1,
            b',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn polys(ring: &Arc<Ring>, s: &str, offset: usize) -> Result<Vec<Polynomial>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(s)
        .into_iter()
        .map(|(o, part)| {
            if part.trim().is_empty() {
                return Err(syntax(offset + o, "empty entry"));
            }
            ring.poly(part).map_err(|e| shift(e, offset + o))
        })
        .collect()
}

fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Ok(Field::rationals());
    }
    let digits = t
        .strip_prefix("F")
        .or_else(|| t.strip_prefix("GF"))
        .or_else(|| t.strip_prefix("ZZ/"))
        .ok_or_else(|| syntax(0, format!("unknown field `{t}`")))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| syntax(0, format!("bad characteristic `{digits}`")))?;
    Field::prime(p).map_err(|e| syntax(0, e.to_string()))
}

/// Parses `Q[x,y]`, `F32003[x,y,z]:lex`, `Q[x,y]/(x*y)`, `Q[x,y:2]`.
pub fn parse_ring(text: &str) -> Result<Arc<Ring>> {
    let open = text.find('[').ok_or_else(|| syntax(text.len(), "expected `[`"))?;
    let field = parse_field(&text[..open])?;
    let close = matching(text, open)?;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for (o, part) in split_top(&text[open + 1..close]) {
        let pos = open + 1 + o;
        let (name, w) = match part.split_once(':') {
            Some((n, w)) => {
                let w: u32 = w
                    .trim()
                    .parse()
                    .map_err(|_| syntax(pos, format!("bad weight `{}`", w.trim())))?;
                (n.trim(), w)
            }
            None => (part.trim(), 1),
        };
        if name.is_empty() {
            return Err(syntax(pos, "empty variable name"));
        }
        names.push(name.to_string());
        weights.push(w);
    }
    let mut rest = close + 1;
    let mut order = MonomialOrder::GRevLex;
    let mut quotient: Option<(usize, usize)> = None;
    while rest < text.len() {
        let tail = &text[rest..];
        let trimmed = tail.trim_start();
        rest += tail.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        if let Some(o) = trimmed.strip_prefix(':') {
            let word: String = o.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
            order = match word.as_str() {
                "lex" => MonomialOrder::Lex,
                "grevlex" => MonomialOrder::GRevLex,
                _ => return Err(syntax(rest + 1, format!("unknown order `{word}`"))),
            };
            rest += 1 + word.len();
        } else if trimmed.starts_with("/(") {
            let end = matching(text, rest + 1)?;
            quotient = Some((rest + 2, end));
            rest = end + 1;
        } else {
            return Err(syntax(rest, "unexpected text after ring"));
        }
    }
    let ring = Ring::with_weights(field, &names, order, &weights)?;
    match quotient {
        None => Ok(ring),
        Some((a, b)) => {
            let gens = polys(&ring, &text[a..b], a)?;
            ring.quotient_by(&gens)
        }
    }
}

/// Canonical text of a ring, accepted by [`parse_ring`].
pub fn ring_text(ring: &Ring) -> String {
    ring.to_string()
}

/// Comma-separated polynomials.
pub fn parse_sequence(ring: &Arc<Ring>, text: &str) -> Result<Vec<Polynomial>> {
    let t = polys(ring, text, 0)?;
    if t.is_empty() {
        return Err(syntax(0, "empty sequence"));
    }
    Ok(t)
}

pub fn sequence_text(t: &[Polynomial]) -> String {
    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn parse_ints(s: &str, offset: usize) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(s)
        .into_iter()
        .map(|(o, p)| {
            p.trim()
                .parse()
                .map_err(|_| syntax(offset + o, format!("bad integer `{}`", p.trim())))
        })
        .collect()
}

/// Parses a module: `R`, `R^2`, `free 3`, `R/(x, y)`, `coker [[x^2, x*y]]`,
/// each optionally followed by `twists [..]`.
pub fn parse_module(ring: &Arc<Ring>, text: &str) -> Result<FpModule> {
    let (body, twists) = match text.find("twists") {
        Some(k) => {
            let after = &text[k + 6..];
            let lead = after.len() - after.trim_start().len();
            let open = k + 6 + lead;
            if !text[open..].starts_with('[') {
                return Err(syntax(open, "expected `[` after `twists`"));
            }
            let close = matching(text, open)?;
            if !text[close + 1..].trim().is_empty() {
                return Err(syntax(close + 1, "unexpected text after twists"));
            }
            (&text[..k], Some(parse_ints(&text[open + 1..close], open + 1)?))
        }
        None => (text, None),
    };
    let lead = body.len() - body.trim_start().len();
    let b = body.trim();
    let with_twists = |rank: usize| -> Result<Vec<i64>> {
        match &twists {
            None => Ok(vec![0; rank]),
            Some(t) if t.len() == rank => Ok(t.clone()),
            Some(t) => Err(Error::Shape(format!("{} twists for {rank} generators", t.len()))),
        }
    };
    if b == "R" {
        return Ok(FpModule::free(ring, with_twists(1)?));
    }
    if let Some(n) = b.strip_prefix("R^").or_else(|| b.strip_prefix("free")) {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| syntax(lead, format!("bad rank `{}`", n.trim())))?;
        return Ok(FpModule::free(ring, with_twists(n)?));
    }
    if let Some(rest) = b.strip_prefix("R/") {
        let open = lead + 2 + (rest.len() - rest.trim_start().len());
        if !body[open..].starts_with('(') {
            return Err(syntax(open, "expected `(`"));
        }
        let close = matching(body, open)?;
        let gens = polys(ring, &body[open + 1..close], open + 1)?;
        let tw = with_twists(1)?;
        let cols = gens.into_iter().map(|g| vec![g]).collect();
        return FpModule::from_columns(ring, tw, cols);
    }
    if let Some(rest) = b.strip_prefix("coker") {
        let open = lead + 5 + (rest.len() - rest.trim_start().len());
        if !body[open..].starts_with('[') {
            return Err(syntax(open, "expected a matrix"));
        }
        let close = matching(body, open)?;
        let mut rows = Vec::new();
        for (o, part) in split_top(&body[open + 1..close]) {
            let start = open + 1 + o + (part.len() - part.trim_start().len());
            let p = part.trim();
            if !p.starts_with('[') || !p.ends_with(']') {
                return Err(syntax(start, "expected a row `[..]`"));
            }
            rows.push(polys(ring, &p[1..p.len() - 1], start + 1)?);
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(syntax(open, "ragged rows"));
        }
        let tw = with_twists(rows.len())?;
        let cols = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        let m = Matrix::from_columns(ring, tw, cols)?;
        return FpModule::new(m);
    }
    Err(syntax(lead, format!("unknown module `{b}`")))
}

/// Canonical text of a module, accepted by [`parse_module`].
pub fn module_text(m: &FpModule) -> String {
    m.to_string()
}

/// Parses an ideal as comma-separated generators.
pub fn parse_ideal(ring: &Arc<Ring>, text: &str) -> Result<Ideal> {
    Ideal::new(ring, polys(ring, text, 0)?)
}

/// Parses `lo..hi` (inclusive).
pub fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| syntax(0, "expected `lo..hi`"))?;
    let lo: i64 = a.trim().parse().map_err(|_| syntax(0, format!("bad bound `{a}`")))?;
    let hi: i64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| syntax(a.len() + 2, format!("bad bound `{b}`")))?;
    if lo > hi {
        return Err(Error::BadBounds(format!("empty window {lo}..{hi}")));
    }
    Ok((lo, hi))
}
