//! Comparing two lists of tilings up to equivalence.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::io::{format_diagram, parse_tiling, TilingText};
use crate::model::{DecoratedCorner, PlanarDiagram, VertexSet};
use crate::symmetry::{canonical_form, CanonicalKey};
use crate::trace::{diagram_of, validate_vertex_set};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} bad line(s) in list {side}; first: {}", errors.len(), errors[0])]
pub struct CompareError {
    pub side: char,
    pub errors: Vec<LineError>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ListOptions {
    /// Read each vertex of a vertex set as a circular order up to reversal,
    /// keeping the one orientation choice that some diagram induces.
    pub loose_orientation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListEntry {
    pub line: usize,
    pub diagram: PlanarDiagram,
}

/// Every way of reversing individual vertices of `vs` that gives a valid
/// vertex set. Cycles of length two or less are left alone.
pub fn resolve_orientations(vs: &VertexSet) -> Vec<VertexSet> {
    let verts = vs.vertices();
    let flexible: Vec<usize> = (0..verts.len())
        .filter(|&k| verts[k].degree() > 2)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << flexible.len().min(20)) {
        let cycles: Vec<Vec<DecoratedCorner>> = verts
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut c = v.cycle().to_vec();
                if let Some(bit) = flexible.iter().position(|&f| f == k) {
                    if mask >> bit & 1 == 1 {
                        c.reverse();
                    }
                }
                c
            })
            .collect();
        let Ok(candidate) = VertexSet::new(vs.n(), cycles) else {
            continue;
        };
        if validate_vertex_set(&candidate).is_valid() && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

fn entry_diagram(text: &str, opts: ListOptions) -> Result<PlanarDiagram, String> {
    match parse_tiling(text).map_err(|e| e.to_string())? {
        TilingText::Diagram(d) => Ok(d),
        TilingText::VertexSet(vs) => {
            let report = validate_vertex_set(&vs);
            if report.is_valid() {
                return diagram_of(&vs).map_err(|e| e.to_string());
            }
            if !opts.loose_orientation {
                return Err(report.to_string());
            }
            match resolve_orientations(&vs).as_slice() {
                [one] => diagram_of(one).map_err(|e| e.to_string()),
                [] => Err(format!(
                    "{report}; no choice of vertex orientations is valid"
                )),
                many => Err(format!(
                    "{} valid choices of vertex orientations",
                    many.len()
                )),
            }
        }
    }
}

/// Reads one tiling per line, skipping blank lines and `#` comments.
pub fn parse_list(text: &str, opts: ListOptions) -> Result<Vec<ListEntry>, Vec<LineError>> {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        match entry_diagram(raw, opts) {
            Ok(diagram) => entries.push(ListEntry {
                line: k + 1,
                diagram,
            }),
            Err(message) => errors.push(LineError {
                line: k + 1,
                message,
            }),
        }
    }
    if errors.is_empty() {
        Ok(entries)
    } else {
        Err(errors)
    }
}

/// One equivalence class and the input lines that fall into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyedLines {
    pub key: CanonicalKey,
    pub representative: PlanarDiagram,
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub key: CanonicalKey,
    pub representative: PlanarDiagram,
    pub lines_a: Vec<usize>,
    pub lines_b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComparisonReport {
    pub entries_a: usize,
    pub entries_b: usize,
    pub matched: Vec<Match>,
    /// Classes present only in A.
    pub missing_from_b: Vec<KeyedLines>,
    /// Classes present only in B.
    pub missing_from_a: Vec<KeyedLines>,
    /// Classes hit by two or more lines of A.
    pub duplicate_groups_a: Vec<KeyedLines>,
    pub duplicate_groups_b: Vec<KeyedLines>,
}

type Classes = BTreeMap<(usize, CanonicalKey), (PlanarDiagram, Vec<usize>)>;

fn classes(list: &[ListEntry]) -> Classes {
    let mut map = Classes::new();
    for e in list {
        let cf = canonical_form(&e.diagram);
        map.entry((e.diagram.n(), cf.key))
            .or_insert_with(|| (cf.representative, Vec::new()))
            .1
            .push(e.line);
    }
    map
}

fn keyed(
    ((_, key), (representative, lines)): (&(usize, CanonicalKey), &(PlanarDiagram, Vec<usize>)),
) -> KeyedLines {
    KeyedLines {
        key: key.clone(),
        representative: representative.clone(),
        lines: lines.clone(),
    }
}

pub fn compare(a: &[ListEntry], b: &[ListEntry]) -> ComparisonReport {
    let ca = classes(a);
    let cb = classes(b);
    let mut report = ComparisonReport {
        entries_a: a.len(),
        entries_b: b.len(),
        ..ComparisonReport::default()
    };
    for (k, v) in &ca {
        match cb.get(k) {
            Some((_, lines_b)) => report.matched.push(Match {
                key: k.1.clone(),
                representative: v.0.clone(),
                lines_a: v.1.clone(),
                lines_b: lines_b.clone(),
            }),
            None => report.missing_from_b.push(keyed((k, v))),
        }
    }
    report.missing_from_a = cb
        .iter()
        .filter(|(k, _)| !ca.contains_key(k))
        .map(keyed)
        .collect();
    report.duplicate_groups_a = ca
        .iter()
        .filter(|(_, v)| v.1.len() > 1)
        .map(keyed)
        .collect();
    report.duplicate_groups_b = cb
        .iter()
        .filter(|(_, v)| v.1.len() > 1)
        .map(keyed)
        .collect();
    report
}

/// Parses both lists and compares them.
pub fn compare_texts(
    a: &str,
    b: &str,
    opts: ListOptions,
) -> Result<ComparisonReport, CompareError> {
    let a = parse_list(a, opts).map_err(|errors| CompareError { side: 'A', errors })?;
    let b = parse_list(b, opts).map_err(|errors| CompareError { side: 'B', errors })?;
    Ok(compare(&a, &b))
}

impl ComparisonReport {
    /// The same comparison with the two sides exchanged.
    pub fn swapped(&self) -> ComparisonReport {
        ComparisonReport {
            entries_a: self.entries_b,
            entries_b: self.entries_a,
            matched: self
                .matched
                .iter()
                .map(|m| Match {
                    lines_a: m.lines_b.clone(),
                    lines_b: m.lines_a.clone(),
                    ..m.clone()
                })
                .collect(),
            missing_from_b: self.missing_from_a.clone(),
            missing_from_a: self.missing_from_b.clone(),
            duplicate_groups_a: self.duplicate_groups_b.clone(),
            duplicate_groups_b: self.duplicate_groups_a.clone(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.missing_from_a.is_empty()
            && self.missing_from_b.is_empty()
            && self.duplicate_groups_a.is_empty()
            && self.duplicate_groups_b.is_empty()
    }

    /// Tab-separated records: `kind`, line numbers, canonical diagram.
    pub fn records(&self) -> String {
        let mut out = String::new();
        let joined = |lines: &[usize]| {
            lines
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        for m in &self.matched {
            let _ = writeln!(
                out,
                "matched\t{}\t{}\t{}",
                joined(&m.lines_a),
                joined(&m.lines_b),
                format_diagram(&m.representative)
            );
        }
        for (kind, list) in [
            ("missing_from_b", &self.missing_from_b),
            ("missing_from_a", &self.missing_from_a),
            ("duplicate_a", &self.duplicate_groups_a),
            ("duplicate_b", &self.duplicate_groups_b),
        ] {
            for k in list {
                let _ = writeln!(
                    out,
                    "{kind}\t{}\t{}",
                    joined(&k.lines),
                    format_diagram(&k.representative)
                );
            }
        }
        out
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes_a = self.matched.len() + self.missing_from_b.len();
        let classes_b = self.matched.len() + self.missing_from_a.len();
        writeln!(f, "A: {} entries, {} classes", self.entries_a, classes_a)?;
        writeln!(f, "B: {} entries, {} classes", self.entries_b, classes_b)?;
        writeln!(f, "matched classes: {}", self.matched.len())?;
        let sections = [
            ("missing from B", 'A', &self.missing_from_b),
            ("missing from A", 'B', &self.missing_from_a),
            ("duplicate groups in A", 'A', &self.duplicate_groups_a),
            ("duplicate groups in B", 'B', &self.duplicate_groups_b),
        ];
        for (title, side, list) in sections {
            writeln!(f, "{title}: {}", list.len())?;
            for k in list {
                let lines: Vec<String> = k.lines.iter().map(|l| l.to_string()).collect();
                let word = if k.lines.len() == 1 { "line" } else { "lines" };
                writeln!(
                    f,
                    "  {}  ({side} {word} {})",
                    format_diagram(&k.representative),
                    lines.join(", ")
                )?;
            }
        }
        Ok(())
    }
}
