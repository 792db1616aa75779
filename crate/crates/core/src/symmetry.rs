//! Dihedral relabelling of the polygon and canonical forms.
//!
//! The group acts on corners by `i -> c + i` (rotation) and `i -> c - i`
//! (reflection). Under a reflection the edge joining corners `i, i+1` goes
//! to the edge joining `c-i-1, c-i`, i.e. edge `i -> c - i - 1`. Pair signs
//! never change.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::model::{DecoratedCorner, PlanarDiagram, Sign, VertexSet};
use crate::trace::{diagram_of, TraceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("polygon sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DihedralElement {
    Rotation(usize),
    Reflection(usize),
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement::Rotation(0);

    /// All `2n` elements: rotations first, then reflections.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralElement> {
        (0..n)
            .map(DihedralElement::Rotation)
            .chain((0..n).map(DihedralElement::Reflection))
    }

    pub fn corner(self, i: usize, n: usize) -> usize {
        match self {
            DihedralElement::Rotation(c) => (c + i) % n,
            DihedralElement::Reflection(c) => (c + n - i % n) % n,
        }
    }

    pub fn edge(self, i: usize, n: usize) -> usize {
        match self {
            DihedralElement::Rotation(c) => (c + i) % n,
            DihedralElement::Reflection(c) => (c + 2 * n - i % n - 1) % n,
        }
    }

    pub fn is_reflection(self) -> bool {
        matches!(self, DihedralElement::Reflection(_))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: DihedralElement, n: usize) -> DihedralElement {
        use DihedralElement::{Reflection as F, Rotation as R};
        match (self, other) {
            (R(a), R(b)) => R((a + b) % n),
            (R(a), F(b)) => F((a + b) % n),
            (F(a), R(b)) => F((a + n - b % n) % n),
            (F(a), F(b)) => R((a + n - b % n) % n),
        }
    }

    pub fn inverse(self, n: usize) -> DihedralElement {
        match self {
            DihedralElement::Rotation(c) => DihedralElement::Rotation((n - c % n) % n),
            f @ DihedralElement::Reflection(_) => f,
        }
    }
}

pub fn transform_diagram(d: &PlanarDiagram, g: DihedralElement) -> PlanarDiagram {
    let n = d.n();
    let mut partner = vec![0u8; n];
    let mut sign = vec![Sign::Plus; n];
    for i in 0..n {
        let gi = g.edge(i, n);
        partner[gi] = g.edge(d.partner(i), n) as u8;
        sign[gi] = d.sign(i);
    }
    PlanarDiagram::from_tables(partner, sign)
}

pub fn transform_vertex_set(vs: &VertexSet, g: DihedralElement) -> VertexSet {
    let n = vs.n();
    let cycles = vs
        .vertices()
        .iter()
        .map(|v| {
            let mut out: Vec<_> = v
                .cycle()
                .iter()
                .map(|c| DecoratedCorner::new(g.corner(c.corner, n), c.sign))
                .collect();
            if g.is_reflection() {
                out.reverse();
            }
            out
        })
        .collect();
    VertexSet::new(n, cycles).expect("relabelling preserves the partition")
}

/// Orbit fingerprint: for each edge in order, its partner then its sign
/// (`+` as 0, `-` as 1). Keys compare lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn of(d: &PlanarDiagram) -> CanonicalKey {
        let mut key = Vec::with_capacity(2 * d.n());
        for i in 0..d.n() {
            key.push(d.partner(i) as u8);
            key.push(sign_code(d.sign(i)));
        }
        CanonicalKey(key.into_boxed_slice())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:?})", self.0)
    }
}

fn sign_code(s: Sign) -> u8 {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Compares the encoding of `g · d` with the encoding of `d`, stopping at
/// the first difference.
pub(crate) fn compare_image(partner: &[u8], sign: &[Sign], g: DihedralElement) -> Ordering {
    let n = partner.len();
    let inv = g.inverse(n);
    for k in 0..n {
        let src = inv.edge(k, n);
        let p = g.edge(partner[src] as usize, n) as u8;
        match p.cmp(&partner[k]) {
            Ordering::Equal => {}
            other => return other,
        }
        match sign_code(sign[src]).cmp(&sign_code(sign[k])) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// True when no relabelling of `d` has a smaller encoding.
pub fn is_canonical(d: &PlanarDiagram) -> bool {
    let (partner, sign) = (d.partner_table(), d.sign_table());
    DihedralElement::all(d.n())
        .skip(1)
        .all(|g| compare_image(partner, sign, g) != Ordering::Less)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub representative: PlanarDiagram,
    /// Number of group elements fixing the diagram; divides `2n`.
    pub stabilizer_order: usize,
}

impl CanonicalForm {
    pub fn orbit_size(&self) -> usize {
        2 * self.representative.n() / self.stabilizer_order
    }
}

pub fn canonical_form(d: &PlanarDiagram) -> CanonicalForm {
    let mut best: Option<(CanonicalKey, PlanarDiagram)> = None;
    let mut stabilizer_order = 0;
    for g in DihedralElement::all(d.n()) {
        let image = transform_diagram(d, g);
        if image == *d {
            stabilizer_order += 1;
        }
        let key = CanonicalKey::of(&image);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, image));
        }
    }
    let (key, representative) = best.expect("the group is nonempty");
    CanonicalForm {
        key,
        representative,
        stabilizer_order,
    }
}

pub fn equivalent(a: &PlanarDiagram, b: &PlanarDiagram) -> Result<bool, SymmetryError> {
    if a.n() != b.n() {
        return Err(SymmetryError::SizeMismatch(a.n(), b.n()));
    }
    Ok(canonical_form(a).key == canonical_form(b).key)
}

/// Equivalence of vertex sets, decided through their diagrams.
pub fn equivalent_vertex_sets(a: &VertexSet, b: &VertexSet) -> Result<bool, SymmetryError> {
    if a.n() != b.n() {
        return Err(SymmetryError::SizeMismatch(a.n(), b.n()));
    }
    equivalent(&diagram_of(a)?, &diagram_of(b)?)
}
