//! Command-line front end for `quadual`: JSON documents in, tables, documents
//! and SVG out.

pub mod app;
pub mod document;
pub mod render;

pub use document::{parse_document, DocumentError, QuadrangleDocument};
pub use render::{render_svg, RenderSpec};
