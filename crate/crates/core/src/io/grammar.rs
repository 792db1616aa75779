//! Text forms of diagrams and vertex sets.
//!
//! ```text
//! diagram     n=10: 0-1-, 2-5+, 3-8-, 4-7-, 6-9
//! vertex set  n=10: (0,1-,2,6)(3,8-,5)(4,7-,9-)
//! compact     n=12 compact: (036,12(10)7(11),4589)
//! ```
//!
//! A missing sign means `+`; `−` (U+2212) is read as `-`. The compact form
//! writes each vertex as a digit string, with corners of two or more digits
//! wrapped in parentheses.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{DecoratedCorner, ModelError, PlanarDiagram, Sign, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Cursor {
        Cursor {
            chars: text
                .chars()
                .map(|c| if c == '\u{2212}' { '-' } else { c })
                .collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.error("number too large")
        })
    }

    fn sign(&mut self) -> Sign {
        if self.eat('-') {
            Sign::Minus
        } else {
            self.eat('+');
            Sign::Plus
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    /// `n=<N>` followed by an optional tag word and `:`.
    fn header(&mut self) -> Result<(usize, Option<String>), ParseError> {
        if !self.keyword("n") {
            return self.error("expected 'n='");
        }
        self.expect('=')?;
        let n = self.number()?;
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        let tag = (self.pos > start).then(|| self.chars[start..self.pos].iter().collect());
        self.expect(':')?;
        Ok((n, tag))
    }
}

fn untagged(c: &mut Cursor) -> Result<usize, ParseError> {
    let at = c.pos;
    match c.header()? {
        (n, None) => Ok(n),
        (_, Some(tag)) => {
            c.pos = at;
            c.error(format!("unexpected tag {tag:?}"))
        }
    }
}

pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, ParseError> {
    let mut c = Cursor::new(text);
    let n = untagged(&mut c)?;
    if n % 2 != 0 {
        return Err(ModelError::NotEven(n).into());
    }
    let mut pairs = Vec::new();
    loop {
        let a = c.number()?;
        c.expect('-')?;
        let b = c.number()?;
        let s = c.sign();
        pairs.push((a, b, s));
        if !c.eat(',') {
            break;
        }
    }
    c.end()?;
    Ok(PlanarDiagram::new(n, &pairs)?)
}

pub fn format_diagram(d: &PlanarDiagram) -> String {
    let mut out = format!("n={}:", d.n());
    for (k, p) in d.pairs().enumerate() {
        let sep = if k == 0 { " " } else { ", " };
        let sign = if p.sign == Sign::Minus { "-" } else { "" };
        let _ = write!(out, "{sep}{}-{}{sign}", p.a.0, p.b.0);
    }
    out
}

fn decorated(corner: usize, sign: Sign) -> DecoratedCorner {
    DecoratedCorner::new(corner, sign)
}

pub fn parse_vertex_set(text: &str) -> Result<VertexSet, ParseError> {
    let mut c = Cursor::new(text);
    let n = untagged(&mut c)?;
    let mut cycles = Vec::new();
    loop {
        c.expect('(')?;
        let mut cycle = Vec::new();
        loop {
            let corner = c.number()?;
            cycle.push(decorated(corner, c.sign()));
            if !c.eat(',') {
                break;
            }
        }
        c.expect(')')?;
        cycles.push(cycle);
        c.eat(',');
        if c.peek().is_none() {
            break;
        }
    }
    Ok(VertexSet::new(n, cycles)?)
}

pub fn format_vertex_set(vs: &VertexSet) -> String {
    let mut out = format!("n={}: ", vs.n());
    for v in vs.vertices() {
        out.push('(');
        for (k, dc) in v.cycle().iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", dc.corner);
            if dc.sign == Sign::Minus {
                out.push('-');
            }
        }
        out.push(')');
    }
    out
}

/// Reads the compact digit-string notation. Accepts `n=<N> compact: (...)`
/// or, with `n` supplied, a bare `(...)`.
pub fn parse_compact_vertex_set(text: &str, n: Option<usize>) -> Result<VertexSet, ParseError> {
    let mut c = Cursor::new(text);
    let n = if c.peek() == Some('n') {
        let at = c.pos;
        match c.header()? {
            (n, Some(tag)) if tag == "compact" => n,
            _ => {
                c.pos = at;
                return c.error("expected 'n=<N> compact:'");
            }
        }
    } else {
        match n {
            Some(n) => n,
            None => return c.error("polygon size required"),
        }
    };
    c.expect('(')?;
    let mut cycles = Vec::new();
    let mut cycle = Vec::new();
    loop {
        c.skip_ws();
        match c.chars.get(c.pos).copied() {
            Some(d) if d.is_ascii_digit() => {
                c.pos += 1;
                let corner = d.to_digit(10).unwrap_or(0) as usize;
                cycle.push(decorated(corner, c.sign()));
            }
            Some('(') => {
                c.pos += 1;
                let corner = c.number()?;
                c.expect(')')?;
                cycle.push(decorated(corner, c.sign()));
            }
            Some(',') | Some(')') => {
                if cycle.is_empty() {
                    return c.error("empty vertex");
                }
                cycles.push(std::mem::take(&mut cycle));
                let close = c.chars[c.pos] == ')';
                c.pos += 1;
                if close {
                    break;
                }
            }
            Some(other) => return c.error(format!("unexpected '{other}'")),
            None => return c.error("unterminated vertex set"),
        }
    }
    c.end()?;
    Ok(VertexSet::new(n, cycles)?)
}

/// One parsed line of a tiling list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingText {
    Diagram(PlanarDiagram),
    VertexSet(VertexSet),
}

/// Parses any of the three notations, telling them apart by the header tag
/// and the first character after it.
pub fn parse_tiling(text: &str) -> Result<TilingText, ParseError> {
    let mut c = Cursor::new(text);
    let (_, tag) = c.header()?;
    match tag.as_deref() {
        Some("compact") => Ok(TilingText::VertexSet(parse_compact_vertex_set(text, None)?)),
        Some(other) => c.error(format!("unknown tag {other:?}")),
        None if c.peek() == Some('(') => Ok(TilingText::VertexSet(parse_vertex_set(text)?)),
        None => Ok(TilingText::Diagram(parse_diagram(text)?)),
    }
}
