//! Merge-tree representation of a finite ultrametric space and the two
//! inverse maps between distance tables and dendrograms.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;
use crate::space::UltrametricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DendrogramError {
    #[error("merge at height {0} has fewer than two children")]
    TooFewChildren(Rational),
    #[error("merge height must be positive")]
    ZeroHeight,
    #[error("merge height {parent} is not above child height {child}")]
    NonIncreasingHeight { parent: Rational, child: Rational },
    #[error("duplicate leaf label `{0}`")]
    DuplicateLeaf(String),
}

/// A rooted merge tree. Leaves sit at height 0; every merge node has at
/// least two children and is strictly higher than each of them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Dendrogram {
    Leaf(String),
    Merge {
        height: Rational,
        children: Vec<Dendrogram>,
    },
}

impl Dendrogram {
    pub fn leaf(label: impl Into<String>) -> Self {
        Dendrogram::Leaf(label.into())
    }

    /// Checked merge node. Leaf-label distinctness is checked by
    /// [`Dendrogram::validate`].
    pub fn merge(height: Rational, children: Vec<Dendrogram>) -> Result<Self, DendrogramError> {
        if height.is_zero() {
            return Err(DendrogramError::ZeroHeight);
        }
        if children.len() < 2 {
            return Err(DendrogramError::TooFewChildren(height));
        }
        for child in &children {
            let child_height = child.height();
            if child_height >= height {
                return Err(DendrogramError::NonIncreasingHeight {
                    parent: height,
                    child: child_height,
                });
            }
        }
        Ok(Dendrogram::Merge { height, children })
    }

    /// Checks every structural invariant, including distinct leaf labels.
    pub fn validate(&self) -> Result<(), DendrogramError> {
        fn walk<'a>(d: &'a Dendrogram, seen: &mut HashSet<&'a str>) -> Result<(), DendrogramError> {
            match d {
                Dendrogram::Leaf(label) => {
                    if !seen.insert(label) {
                        return Err(DendrogramError::DuplicateLeaf(label.clone()));
                    }
                }
                Dendrogram::Merge { height, children } => {
                    if height.is_zero() {
                        return Err(DendrogramError::ZeroHeight);
                    }
                    if children.len() < 2 {
                        return Err(DendrogramError::TooFewChildren(height.clone()));
                    }
                    for c in children {
                        if c.height() >= *height {
                            return Err(DendrogramError::NonIncreasingHeight {
                                parent: height.clone(),
                                child: c.height(),
                            });
                        }
                        walk(c, seen)?;
                    }
                }
            }
            Ok(())
        }
        walk(self, &mut HashSet::new())
    }

    pub fn height(&self) -> Rational {
        match self {
            Dendrogram::Leaf(_) => Rational::zero(),
            Dendrogram::Merge { height, .. } => height.clone(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Dendrogram::Leaf(_))
    }

    /// Leaf labels in depth-first, left-to-right order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Dendrogram::Leaf(l) => out.push(l),
            Dendrogram::Merge { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Dendrogram::Leaf(_) => 1,
            Dendrogram::Merge { children, .. } => children.iter().map(Dendrogram::leaf_count).sum(),
        }
    }

    /// Leaf sets of every merge node, in pre-order.
    pub fn clusters(&self) -> Vec<(Rational, Vec<&str>)> {
        let mut out = Vec::new();
        fn walk<'a>(d: &'a Dendrogram, out: &mut Vec<(Rational, Vec<&'a str>)>) {
            if let Dendrogram::Merge { height, children } = d {
                out.push((height.clone(), d.leaves()));
                for c in children {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Children sorted recursively by their smallest leaf label.
    pub fn normalized(&self) -> Dendrogram {
        match self {
            Dendrogram::Leaf(_) => self.clone(),
            Dendrogram::Merge { height, children } => {
                let mut kids: Vec<Dendrogram> = children.iter().map(Dendrogram::normalized).collect();
                kids.sort_by(|a, b| a.min_label().cmp(b.min_label()));
                Dendrogram::Merge {
                    height: height.clone(),
                    children: kids,
                }
            }
        }
    }

    fn min_label(&self) -> &str {
        self.leaves().into_iter().min().expect("dendrogram has a leaf")
    }

    /// The ultrametric whose distances are lowest-common-ancestor heights.
    /// Points are listed in leaf order.
    pub fn to_space(&self) -> UltrametricSpace {
        ultrametric_of(self)
    }
}

impl fmt::Debug for Dendrogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `node(h; child, ...)` form, leaves by label.
impl fmt::Display for Dendrogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dendrogram::Leaf(l) => write!(f, "{l}"),
            Dendrogram::Merge { height, children } => {
                write!(f, "node({height}; ")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Builds the merge tree of a space.
///
/// A set of points with internal diameter `D` splits into the classes of
/// the relation `d(x, y) < D`; each class becomes one child, so points
/// that merge simultaneously share a single k-ary node. Children are
/// ordered by smallest point index.
pub fn dendrogram_of(space: &UltrametricSpace) -> Dendrogram {
    let all: Vec<usize> = (0..space.len()).collect();
    build(space, &all)
}

fn build(space: &UltrametricSpace, members: &[usize]) -> Dendrogram {
    if members.len() == 1 {
        return Dendrogram::Leaf(space.label(members[0]).to_string());
    }
    let height = members
        .iter()
        .flat_map(|&i| members.iter().map(move |&j| space.dist(i, j)))
        .max()
        .unwrap()
        .clone();
    let mut assigned = vec![false; members.len()];
    let mut children = Vec::new();
    for a in 0..members.len() {
        if assigned[a] {
            continue;
        }
        let class: Vec<usize> = (a..members.len())
            .filter(|&b| !assigned[b] && *space.dist(members[a], members[b]) < height)
            .collect();
        for &b in &class {
            assigned[b] = true;
        }
        let class_members: Vec<usize> = class.into_iter().map(|b| members[b]).collect();
        children.push(build(space, &class_members));
    }
    Dendrogram::Merge { height, children }
}

/// The cophenetic ultrametric of a dendrogram: `d(x, y)` is the height of
/// the lowest common ancestor of leaves `x` and `y`.
pub fn ultrametric_of(dendro: &Dendrogram) -> UltrametricSpace {
    let labels: Vec<String> = dendro.leaves().into_iter().map(str::to_string).collect();
    let n = labels.len();
    let mut dist = vec![Rational::zero(); n * n];
    fill(dendro, 0, n, &mut dist);
    UltrametricSpace::from_parts_unchecked(labels, dist)
}

/// Fills distances for the leaves of `d`, which occupy positions
/// `offset..offset + leaf_count` in leaf order.
fn fill(d: &Dendrogram, offset: usize, n: usize, dist: &mut [Rational]) -> usize {
    match d {
        Dendrogram::Leaf(_) => 1,
        Dendrogram::Merge { height, children } => {
            let mut spans = Vec::with_capacity(children.len());
            let mut pos = offset;
            for c in children {
                let size = fill(c, pos, n, dist);
                spans.push((pos, pos + size));
                pos += size;
            }
            for (ci, &(s1, e1)) in spans.iter().enumerate() {
                for &(s2, e2) in &spans[ci + 1..] {
                    for i in s1..e1 {
                        for j in s2..e2 {
                            dist[i * n + j] = height.clone();
                            dist[j * n + i] = height.clone();
                        }
                    }
                }
            }
            pos - offset
        }
    }
}
