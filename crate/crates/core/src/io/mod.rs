//! Reading and writing diagrams, vertex sets and catalogs.

mod catalog;
mod grammar;
mod svg;

pub use catalog::{
    format_catalog, parse_catalog, read_catalog, write_catalog, Catalog, CatalogError,
};
pub use grammar::{
    format_diagram, format_vertex_set, parse_compact_vertex_set, parse_diagram, parse_tiling,
    parse_vertex_set, ParseError, TilingText,
};
pub use svg::{render_svg, RenderOptions};
