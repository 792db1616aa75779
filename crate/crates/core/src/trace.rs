//! Conversion between planar diagrams and vertex sets.
//!
//! Walking around a tiling vertex is a permutation on the `2n` decorated
//! corners: from `i+` the pair containing edge `i` is consulted, from `i-`
//! the pair containing edge `i - 1`. Each vertex shows up as two cycles of
//! that permutation, one the sign-flipped reversal of the other.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::{
    surface_class, DecoratedCorner, ModelError, PlanarDiagram, Sign, TilingSummary, VertexSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("edge {edge} induced with conflicting partners or signs")]
    Inconsistent { edge: usize },
    #[error("edge pair {a}-{b}{sign} induced {count} times, expected 2")]
    NotTwoToOne {
        a: usize,
        b: usize,
        sign: char,
        count: usize,
    },
    #[error("adjacent corners induce edge {0} paired with itself")]
    SelfPair(usize),
    #[error("vertex set is not the one traced from its induced diagram")]
    NotRealized,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The unique corner following `c` clockwise around its vertex.
pub fn successor(d: &PlanarDiagram, c: DecoratedCorner) -> DecoratedCorner {
    let n = d.n();
    match c.sign {
        Sign::Plus => {
            let edge = c.corner;
            let j = d.partner(edge);
            match d.sign(edge) {
                Sign::Plus => DecoratedCorner::plus((j + 1) % n),
                Sign::Minus => DecoratedCorner::minus(j),
            }
        }
        Sign::Minus => {
            let edge = (c.corner + n - 1) % n;
            let j = d.partner(edge);
            match d.sign(edge) {
                Sign::Minus => DecoratedCorner::plus((j + 1) % n),
                Sign::Plus => DecoratedCorner::minus(j),
            }
        }
    }
}

/// The successor cycle starting at `start`, in traversal order.
pub fn trace_cycle(d: &PlanarDiagram, start: DecoratedCorner) -> Vec<DecoratedCorner> {
    let mut cycle = vec![start];
    let mut c = successor(d, start);
    while c != start {
        cycle.push(c);
        c = successor(d, c);
    }
    cycle
}

/// Raw vertex cycles in discovery order, each traced from the `+` decoration
/// of its smallest corner.
pub fn vertex_cycles(d: &PlanarDiagram) -> Vec<Vec<DecoratedCorner>> {
    let n = d.n();
    let mut assigned = vec![false; n];
    let mut cycles = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let cycle = trace_cycle(d, DecoratedCorner::plus(i));
        for c in &cycle {
            // A cycle meeting both decorations of one corner would be its own
            // mirror; the successor rules never produce one.
            assert!(
                !assigned[c.corner],
                "internal error: corner {} traced twice",
                c.corner
            );
            assigned[c.corner] = true;
        }
        cycles.push(cycle);
    }
    cycles
}

pub fn vertices_of(d: &PlanarDiagram) -> VertexSet {
    VertexSet::new(d.n(), vertex_cycles(d)).expect("traced cycles partition the corners")
}

/// The edge pair induced by two consecutive corners `x y` of a vertex.
fn induced_pair(x: DecoratedCorner, y: DecoratedCorner, n: usize) -> (usize, usize, Sign) {
    let dec = |i: usize| (i + n - 1) % n;
    let (i, j) = (x.corner, y.corner);
    match (x.sign, y.sign) {
        (Sign::Plus, Sign::Plus) => (i, dec(j), Sign::Plus),
        (Sign::Plus, Sign::Minus) => (i, j, Sign::Minus),
        (Sign::Minus, Sign::Plus) => (dec(i), dec(j), Sign::Minus),
        (Sign::Minus, Sign::Minus) => (dec(i), j, Sign::Plus),
    }
}

fn adjacencies(vs: &VertexSet) -> impl Iterator<Item = (DecoratedCorner, DecoratedCorner)> + '_ {
    vs.vertices().iter().flat_map(|v| {
        let c = v.cycle();
        (0..c.len()).map(move |t| (c[t], c[(t + 1) % c.len()]))
    })
}

/// Recovers the planar diagram inducing `vs`.
pub fn diagram_of(vs: &VertexSet) -> Result<PlanarDiagram, TraceError> {
    let n = vs.n();
    let mut partner: Vec<Option<(usize, Sign)>> = vec![None; n];
    let mut counts: HashMap<(usize, usize, Sign), usize> = HashMap::new();
    for (x, y) in adjacencies(vs) {
        let (a, b, s) = induced_pair(x, y, n);
        if a == b {
            return Err(TraceError::SelfPair(a));
        }
        for (p, q) in [(a, b), (b, a)] {
            match partner[p] {
                None => partner[p] = Some((q, s)),
                Some(prev) if prev == (q, s) => {}
                Some(_) => return Err(TraceError::Inconsistent { edge: p }),
            }
        }
        *counts.entry((a.min(b), a.max(b), s)).or_default() += 1;
    }
    let mut keys: Vec<_> = counts.iter().collect();
    keys.sort();
    if let Some((&(a, b, sign), &count)) = keys.into_iter().find(|(_, &c)| c != 2) {
        return Err(TraceError::NotTwoToOne {
            a,
            b,
            sign: sign.symbol(),
            count,
        });
    }
    let pairs: Vec<_> = counts.keys().copied().collect();
    let d = PlanarDiagram::new(n, &pairs)?;
    if vertices_of(&d) != *vs {
        return Err(TraceError::NotRealized);
    }
    Ok(d)
}

/// Which vertex-set condition a candidate partition violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Every cycle has at least three corners.
    MinDegree,
    /// No cycle contains `i+ (i+1)+`.
    NoSuccessiveCorners,
    /// Each adjacency's partner adjacency is present.
    Closure,
    /// No cycle contains `i+ (i+2)+`.
    NoSkipByTwo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Violation {
        condition: Condition,
        detail: String,
    },
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }

    pub fn condition(&self) -> Option<Condition> {
        match self {
            ValidationReport::Valid => None,
            ValidationReport::Violation { condition, .. } => Some(*condition),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Valid => write!(f, "valid"),
            ValidationReport::Violation { condition, detail } => {
                write!(f, "invalid ({condition:?}): {detail}")
            }
        }
    }
}

fn show(c: DecoratedCorner) -> String {
    format!("{}{}", c.corner, c.sign.symbol())
}

/// Checks the vertex-set conditions on a partition, reporting the first
/// violation in the order: degree, successive corners, closure, skip-by-two.
pub fn validate_vertex_set(vs: &VertexSet) -> ValidationReport {
    let n = vs.n();
    let violation = |condition, detail: String| ValidationReport::Violation { condition, detail };

    if let Some(v) = vs.vertices().iter().find(|v| v.degree() < 3) {
        return violation(
            Condition::MinDegree,
            format!("vertex of degree {}", v.degree()),
        );
    }

    // Adjacencies together with their sign-flipped reversals.
    let mut adjacent = std::collections::HashSet::new();
    for (x, y) in adjacencies(vs) {
        adjacent.insert((x, y));
        adjacent.insert((y.flipped(), x.flipped()));
    }
    let plus = DecoratedCorner::plus;
    let minus = DecoratedCorner::minus;
    let mut sorted: Vec<_> = adjacent
        .iter()
        .copied()
        .filter(|(x, _)| x.sign.is_plus())
        .collect();
    sorted.sort();

    for &(x, y) in &sorted {
        if y == plus((x.corner + 1) % n) {
            return violation(
                Condition::NoSuccessiveCorners,
                format!("{} {} adjacent", show(x), show(y)),
            );
        }
    }
    for &(x, y) in &sorted {
        let (i, j) = (x.corner, y.corner);
        let required = match y.sign {
            Sign::Plus => (plus((j + n - 1) % n), plus((i + 1) % n)),
            Sign::Minus => (minus((i + 1) % n), plus((j + 1) % n)),
        };
        if !adjacent.contains(&required) {
            return violation(
                Condition::Closure,
                format!(
                    "{} {} adjacent but {} {} is not",
                    show(x),
                    show(y),
                    show(required.0),
                    show(required.1)
                ),
            );
        }
    }
    for &(x, y) in &sorted {
        if y == plus((x.corner + 2) % n) {
            return violation(
                Condition::NoSkipByTwo,
                format!("{} {} adjacent", show(x), show(y)),
            );
        }
    }
    ValidationReport::Valid
}

/// Traces the vertices of `d` and derives its surface invariants.
pub fn classify(d: &PlanarDiagram) -> TilingSummary {
    let cycles = vertex_cycles(d);
    let mut degrees: Vec<usize> = cycles.iter().map(Vec::len).collect();
    degrees.sort_unstable();
    let orientable = d.all_opposing();
    let (chi, surface) = surface_class(d.n(), cycles.len(), orientable)
        .expect("a gluing of a polygon with only opposing pairs is orientable");
    let summary = TilingSummary {
        n: d.n(),
        e: d.e(),
        v: cycles.len(),
        chi,
        orientable,
        surface,
        degree_too_small: degrees.first().is_some_and(|&k| k < 3),
        degrees,
    };
    assert!(
        summary.satisfies_degree_identity(),
        "degree identity fails for {d:?}"
    );
    summary
}
