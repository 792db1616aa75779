//! Value types for single-tile tilings: signs, corners, edge pairs,
//! planar diagrams, vertex cycles and surface classification.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use thiserror::Error;

/// Largest polygon size supported; labels are stored as `u8`.
pub const MAX_N: usize = 254;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("polygon size {0} is odd")]
    NotEven(usize),
    #[error("polygon size {0} is below 4")]
    TooSmall(usize),
    #[error("polygon size {0} exceeds {MAX_N}")]
    TooLarge(usize),
    #[error("edge {0} is paired with itself")]
    SelfPair(usize),
    #[error("edge pairs do not form a perfect matching: {0}")]
    NotAMatching(String),
    #[error("corners do not form a partition: {0}")]
    NotPartition(String),
    #[error("orientable surface with odd Euler number {chi}")]
    InconsistentOrientability { chi: i64 },
}

/// Gluing orientation of an edge pair, and decoration of a corner.
///
/// `Plus` sorts before `Minus`; catalogs depend on this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Corner `i` of the polygon, a residue mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner(pub usize);

/// Edge `i`, joining corner `i` to corner `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel(pub usize);

/// An unordered pair of glued edges, stored smaller label first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePair {
    pub a: EdgeLabel,
    pub b: EdgeLabel,
    pub sign: Sign,
}

impl EdgePair {
    pub fn new(a: usize, b: usize, sign: Sign) -> EdgePair {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        EdgePair {
            a: EdgeLabel(a),
            b: EdgeLabel(b),
            sign,
        }
    }
}

/// A perfect matching of the `n` edges of an `n`-gon into signed pairs.
///
/// Stored as a partner table indexed by edge, which is already a normal
/// form: two diagrams are equal iff their tables are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    partner: Box<[u8]>,
    sign: Box<[Sign]>,
}

fn check_size(n: usize) -> Result<(), ModelError> {
    if !n.is_multiple_of(2) {
        return Err(ModelError::NotEven(n));
    }
    if n < 4 {
        return Err(ModelError::TooSmall(n));
    }
    if n > MAX_N {
        return Err(ModelError::TooLarge(n));
    }
    Ok(())
}

impl PlanarDiagram {
    /// Builds a validated diagram from `(a, b, sign)` triples.
    pub fn new(n: usize, pairs: &[(usize, usize, Sign)]) -> Result<PlanarDiagram, ModelError> {
        check_size(n)?;
        const UNSET: u8 = u8::MAX;
        let mut partner = vec![UNSET; n];
        let mut sign = vec![Sign::Plus; n];
        for &(a, b, s) in pairs {
            if a == b {
                return Err(ModelError::SelfPair(a));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(ModelError::NotAMatching(format!(
                        "edge {x} out of range for n={n}"
                    )));
                }
                if partner[x] != UNSET {
                    return Err(ModelError::NotAMatching(format!("edge {x} used twice")));
                }
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
            sign[a] = s;
            sign[b] = s;
        }
        if let Some(missing) = partner.iter().position(|&p| p == UNSET) {
            return Err(ModelError::NotAMatching(format!(
                "edge {missing} is unpaired"
            )));
        }
        Ok(PlanarDiagram {
            partner: partner.into_boxed_slice(),
            sign: sign.into_boxed_slice(),
        })
    }

    /// Builds a diagram from raw partner and sign tables without validation.
    /// Callers guarantee an involution without fixed points.
    pub(crate) fn from_tables(partner: Vec<u8>, sign: Vec<Sign>) -> PlanarDiagram {
        debug_assert_eq!(partner.len(), sign.len());
        debug_assert!(partner.iter().enumerate().all(|(i, &p)| p as usize != i
            && partner[p as usize] as usize == i
            && sign[i] == sign[p as usize]));
        PlanarDiagram {
            partner: partner.into_boxed_slice(),
            sign: sign.into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        self.partner.len()
    }

    /// Number of edge pairs, `n / 2`.
    pub fn e(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, edge: usize) -> usize {
        self.partner[edge] as usize
    }

    pub fn sign(&self, edge: usize) -> Sign {
        self.sign[edge]
    }

    pub(crate) fn partner_table(&self) -> &[u8] {
        &self.partner
    }

    pub(crate) fn sign_table(&self) -> &[Sign] {
        &self.sign
    }

    /// Pairs in normal form, sorted by smaller label.
    pub fn pairs(&self) -> impl Iterator<Item = EdgePair> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p as usize)
            .map(|(i, &p)| EdgePair::new(i, p as usize, self.sign[i]))
    }

    /// True when every pair is opposing.
    pub fn all_opposing(&self) -> bool {
        self.sign.iter().all(|s| s.is_plus())
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarDiagram(n={}:", self.n())?;
        for p in self.pairs() {
            write!(f, " {}-{}{}", p.a.0, p.b.0, p.sign.symbol())?;
        }
        write!(f, ")")
    }
}

/// A corner together with an orientation decoration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedCorner {
    pub corner: usize,
    pub sign: Sign,
}

impl DecoratedCorner {
    pub fn new(corner: usize, sign: Sign) -> DecoratedCorner {
        DecoratedCorner { corner, sign }
    }

    pub fn plus(corner: usize) -> DecoratedCorner {
        DecoratedCorner::new(corner, Sign::Plus)
    }

    pub fn minus(corner: usize) -> DecoratedCorner {
        DecoratedCorner::new(corner, Sign::Minus)
    }

    pub fn flipped(self) -> DecoratedCorner {
        DecoratedCorner::new(self.corner, -self.sign)
    }
}

/// One vertex of a tiling: a circular sequence of decorated corners.
///
/// Holds the lexicographically least of all rotations of the cycle and of
/// its reversal with every sign flipped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    cycle: Vec<DecoratedCorner>,
}

fn least_rotation(seq: &[DecoratedCorner]) -> Vec<DecoratedCorner> {
    let k = seq.len();
    (0..k)
        .map(|r| {
            seq[r..]
                .iter()
                .chain(&seq[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

impl Vertex {
    /// Canonicalizes a circular sequence. Distinctness of corners is checked
    /// by [`VertexSet::new`], not here.
    pub fn new(cycle: Vec<DecoratedCorner>) -> Vertex {
        let forward = least_rotation(&cycle);
        let mirrored: Vec<_> = cycle.iter().rev().map(|c| c.flipped()).collect();
        let backward = least_rotation(&mirrored);
        Vertex {
            cycle: forward.min(backward),
        }
    }

    pub fn cycle(&self) -> &[DecoratedCorner] {
        &self.cycle
    }

    pub fn degree(&self) -> usize {
        self.cycle.len()
    }
}

/// A partition of the corners `0..n` into vertex cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    vertices: Vec<Vertex>,
}

impl VertexSet {
    /// Validates the partition and canonicalizes every cycle.
    pub fn new(n: usize, cycles: Vec<Vec<DecoratedCorner>>) -> Result<VertexSet, ModelError> {
        check_size(n)?;
        let mut seen = vec![false; n];
        for cycle in &cycles {
            if cycle.is_empty() {
                return Err(ModelError::NotPartition("empty cycle".into()));
            }
            for c in cycle {
                if c.corner >= n {
                    return Err(ModelError::NotPartition(format!(
                        "corner {} out of range for n={n}",
                        c.corner
                    )));
                }
                if seen[c.corner] {
                    return Err(ModelError::NotPartition(format!(
                        "corner {} repeated",
                        c.corner
                    )));
                }
                seen[c.corner] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(ModelError::NotPartition(format!(
                "corner {missing} missing"
            )));
        }
        let mut vertices: Vec<Vertex> = cycles.into_iter().map(Vertex::new).collect();
        vertices.sort();
        Ok(VertexSet { n, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A closed surface, named by its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Surface {
    /// Connected sum of `genus` tori; genus 0 is the sphere.
    Orientable { genus: u32 },
    /// Connected sum of `crosscaps` projective planes.
    NonOrientable { crosscaps: u32 },
}

impl Surface {
    pub fn from_chi(chi: i64, orientable: bool) -> Result<Surface, ModelError> {
        if orientable {
            if chi % 2 != 0 || chi > 2 {
                return Err(ModelError::InconsistentOrientability { chi });
            }
            Ok(Surface::Orientable {
                genus: ((2 - chi) / 2) as u32,
            })
        } else {
            if chi > 1 {
                return Err(ModelError::InconsistentOrientability { chi });
            }
            Ok(Surface::NonOrientable {
                crosscaps: (2 - chi) as u32,
            })
        }
    }

    pub fn chi(self) -> i64 {
        match self {
            Surface::Orientable { genus } => 2 - 2 * genus as i64,
            Surface::NonOrientable { crosscaps } => 2 - crosscaps as i64,
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, Surface::Orientable { .. })
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Surface::Orientable { genus: 0 } => write!(f, "S2"),
            Surface::Orientable { genus } => write!(f, "{genus}T2"),
            Surface::NonOrientable { crosscaps } => write!(f, "{crosscaps}P2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown surface name {0:?}; expected forms like 2T2, 3P2 or S2")]
pub struct SurfaceNameError(pub String);

impl FromStr for Surface {
    type Err = SurfaceNameError;

    fn from_str(s: &str) -> Result<Surface, SurfaceNameError> {
        let t = s.trim().replace('²', "2");
        let err = || SurfaceNameError(s.to_string());
        if t == "S2" {
            return Ok(Surface::Orientable { genus: 0 });
        }
        let (count, kind) = t.split_at(t.find(|c: char| !c.is_ascii_digit()).ok_or_else(err)?);
        let count: u32 = if count.is_empty() {
            1
        } else {
            count.parse().map_err(|_| err())?
        };
        match kind {
            "T2" if count >= 1 => Ok(Surface::Orientable { genus: count }),
            "P2" if count >= 1 => Ok(Surface::NonOrientable { crosscaps: count }),
            _ => Err(err()),
        }
    }
}

/// Euler number and surface of a single-tile tiling with `v` vertices.
pub fn surface_class(
    n: usize,
    v: usize,
    all_signs_positive: bool,
) -> Result<(i64, Surface), ModelError> {
    if !n.is_multiple_of(2) {
        return Err(ModelError::NotEven(n));
    }
    let chi = v as i64 - (n / 2) as i64 + 1;
    Ok((chi, Surface::from_chi(chi, all_signs_positive)?))
}

/// Derived invariants of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingSummary {
    pub n: usize,
    pub e: usize,
    pub v: usize,
    pub chi: i64,
    pub orientable: bool,
    pub surface: Surface,
    /// Vertex degrees in ascending order.
    pub degrees: Vec<usize>,
    /// Set when some vertex has degree below 3, so the diagram is not a
    /// tiling under the standing degree assumption.
    pub degree_too_small: bool,
}

impl TilingSummary {
    /// `v_k`, the number of vertices of degree `k`.
    pub fn vertices_of_degree(&self, k: usize) -> usize {
        self.degrees.iter().filter(|&&d| d == k).count()
    }

    /// Checks `-2 n chi = sum_k ((k - 2) n - 2k) v_k`.
    pub fn satisfies_degree_identity(&self) -> bool {
        let n = self.n as i64;
        let rhs: i64 = self
            .degrees
            .iter()
            .map(|&k| (k as i64 - 2) * n - 2 * k as i64)
            .sum();
        -2 * n * self.chi == rhs
    }
}
