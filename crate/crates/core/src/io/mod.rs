//! File formats: space and family JSON documents, linkage tables, and
//! dendrogram drawings.

mod document;
mod linkage;
mod render;

pub use document::{
    family_from_json, family_to_json, parse_family, parse_space, space_from_json, space_to_json, write_family,
    write_space, FamilyDocument, IoError, SpaceDocument,
};
pub use linkage::{parse_linkage, parse_linkage_csv, parse_linkage_json, LinkageError, LinkageRow};
pub use render::{render, Bar, Layout, RenderError, RenderFormat, Stem};
