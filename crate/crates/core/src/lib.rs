//! Enumeration of single-tile tilings of closed surfaces.
//!
//! A single polygon with `n = 2e` edges glued in `e` pairs is a planar
//! diagram; its corners fall into vertex cycles, and the Euler number of the
//! glued surface is `v - e + 1`. This crate converts between diagrams and
//! vertex sets, classifies the surface, decides equivalence under the
//! dihedral relabellings of the polygon, and enumerates every tiling of a
//! given surface exactly once.

pub mod cli;
pub mod compare;
pub mod enumerate;
pub mod feasibility;
pub mod io;
pub mod model;
pub mod symmetry;
pub mod trace;

pub use model::{
    DecoratedCorner, EdgePair, PlanarDiagram, Sign, Surface, TilingSummary, Vertex, VertexSet,
};
