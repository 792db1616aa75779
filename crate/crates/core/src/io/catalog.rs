//! Catalog files: a small header followed by one canonical diagram per line.
//!
//! ```text
//! # tilecensus catalog
//! # surface 2T2
//! # n 8
//! # count 4
//! n=8: 0-2, 1-6, 3-5, 4-7
//! ...
//! ```

use std::fs;
use std::path::Path;

use thiserror::Error;

use super::grammar::{format_diagram, parse_diagram, ParseError};
use crate::model::{PlanarDiagram, Surface};
use crate::symmetry::{is_canonical, CanonicalKey};
use crate::trace::classify;

const MAGIC: &str = "# tilecensus catalog";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: ParseError },
    #[error("missing header field `{0}`")]
    MissingHeader(&'static str),
    #[error("line {line}: bad header: {msg}")]
    BadHeader { line: usize, msg: String },
    #[error("header says {header} entries, found {actual}")]
    CountMismatch { header: usize, actual: usize },
    #[error("line {line}: diagram is not the canonical member of its class")]
    NonCanonicalLine { line: usize },
    #[error("line {line}: entries out of order or repeated")]
    Unsorted { line: usize },
    #[error("line {line}: expected a {expected}-gon, found a {found}-gon")]
    SizeMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: diagram tiles {found}, catalog is for {expected}")]
    SurfaceMismatch {
        line: usize,
        expected: Surface,
        found: Surface,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub surface: Option<Surface>,
    pub n: usize,
    pub entries: Vec<PlanarDiagram>,
}

impl Catalog {
    pub fn new(surface: Option<Surface>, n: usize, entries: Vec<PlanarDiagram>) -> Catalog {
        Catalog {
            surface,
            n,
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks the file contract. `first_line` is the line number of the
    /// first entry, used in error reports.
    fn check(&self, first_line: usize) -> Result<(), CatalogError> {
        let mut prev: Option<CanonicalKey> = None;
        for (k, d) in self.entries.iter().enumerate() {
            let line = first_line + k;
            if d.n() != self.n {
                return Err(CatalogError::SizeMismatch {
                    line,
                    expected: self.n,
                    found: d.n(),
                });
            }
            if !is_canonical(d) {
                return Err(CatalogError::NonCanonicalLine { line });
            }
            if let Some(expected) = self.surface {
                let found = classify(d).surface;
                if found != expected {
                    return Err(CatalogError::SurfaceMismatch {
                        line,
                        expected,
                        found,
                    });
                }
            }
            let key = CanonicalKey::of(d);
            if prev.as_ref().is_some_and(|p| *p >= key) {
                return Err(CatalogError::Unsorted { line });
            }
            prev = Some(key);
        }
        Ok(())
    }
}

pub fn format_catalog(cat: &Catalog) -> Result<String, CatalogError> {
    cat.check(5)?;
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    if let Some(s) = cat.surface {
        out.push_str(&format!("# surface {s}\n"));
    }
    out.push_str(&format!("# n {}\n# count {}\n", cat.n, cat.len()));
    for d in &cat.entries {
        out.push_str(&format_diagram(d));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let mut surface = None;
    let mut n = None;
    let mut count = None;
    let mut entries = Vec::new();
    let mut first_entry = None;
    let mut seen_magic = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix('#') {
            if raw == MAGIC {
                seen_magic = true;
                continue;
            }
            let bad = |msg: String| CatalogError::BadHeader { line, msg };
            let mut words = rest.split_whitespace();
            match (words.next(), words.next()) {
                (Some("surface"), Some(v)) => {
                    surface = Some(v.parse::<Surface>().map_err(|e| bad(e.to_string()))?)
                }
                (Some("n"), Some(v)) => {
                    n = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?)
                }
                (Some("count"), Some(v)) => {
                    count = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?)
                }
                _ => {}
            }
            continue;
        }
        first_entry.get_or_insert(line);
        let d = parse_diagram(raw).map_err(|source| CatalogError::Syntax { line, source })?;
        entries.push(d);
    }
    if !seen_magic {
        return Err(CatalogError::MissingHeader("tilecensus catalog"));
    }
    let n = n.ok_or(CatalogError::MissingHeader("n"))?;
    let count = count.ok_or(CatalogError::MissingHeader("count"))?;
    if count != entries.len() {
        return Err(CatalogError::CountMismatch {
            header: count,
            actual: entries.len(),
        });
    }
    let cat = Catalog {
        surface,
        n,
        entries,
    };
    cat.check(first_entry.unwrap_or(1))?;
    Ok(cat)
}

pub fn write_catalog(path: &Path, cat: &Catalog) -> Result<(), CatalogError> {
    let text = format_catalog(cat)?;
    fs::write(path, text)?;
    Ok(())
}

pub fn read_catalog(path: &Path) -> Result<Catalog, CatalogError> {
    parse_catalog(&fs::read_to_string(path)?)
}
