//! Label-free canonical signatures and isometry testing.
//!
//! Two finite ultrametric spaces are isometric exactly when their merge
//! trees, with heights as node labels, are isomorphic as rooted trees. The
//! signature is the usual bottom-up encoding with sorted children:
//!
//! ```text
//! leaf            -> L
//! merge at h      -> (h;s1,s2,...,sk)   children sorted byte-wise
//! ```

use std::fmt;

use serde::Serialize;

use crate::dendrogram::{dendrogram_of, Dendrogram};
use crate::space::UltrametricSpace;

/// Printable ASCII signature of a finite ultrametric space up to isometry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalSignature(String);

impl CanonicalSignature {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_signature(space: &UltrametricSpace) -> CanonicalSignature {
    dendrogram_signature(&dendrogram_of(space))
}

pub fn dendrogram_signature(dendro: &Dendrogram) -> CanonicalSignature {
    CanonicalSignature(encode(dendro))
}

fn encode(d: &Dendrogram) -> String {
    match d {
        Dendrogram::Leaf(_) => "L".to_string(),
        Dendrogram::Merge { height, children } => {
            let mut parts: Vec<String> = children.iter().map(encode).collect();
            parts.sort_unstable();
            format!("({height};{})", parts.join(","))
        }
    }
}

/// True iff a distance-preserving bijection exists.
pub fn is_isometric(x: &UltrametricSpace, y: &UltrametricSpace) -> bool {
    x.len() == y.len() && canonical_signature(x) == canonical_signature(y)
}
