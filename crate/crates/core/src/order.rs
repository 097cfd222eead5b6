//! Admissible orders.
//!
//! A total order on the points is admissible when `x < y < z` implies
//! `d(x, y) <= d(x, z)`. Equivalently every ball of every level occupies a
//! contiguous run of ranks, which is what lets the dendrogram be drawn
//! without crossings.

use serde::Serialize;
use thiserror::Error;

use crate::space::UltrametricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("insertion sequence is not a permutation of 0..{0}")]
    InvalidSequence(usize),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
}

/// A permutation of point indices; position is rank, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PointOrder(Vec<usize>);

fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    seq.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

impl PointOrder {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self, OrderError> {
        if !is_permutation(&indices, n) {
            return Err(OrderError::InvalidPermutation(n));
        }
        Ok(PointOrder(indices))
    }

    pub fn identity(n: usize) -> Self {
        PointOrder((0..n).collect())
    }

    pub fn from_labels<S: AsRef<str>>(space: &UltrametricSpace, labels: &[S]) -> Result<Self, OrderError> {
        let indices = labels
            .iter()
            .map(|l| {
                space
                    .index_of(l.as_ref())
                    .ok_or_else(|| OrderError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PointOrder::new(indices, space.len())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ranks()[point] = position of point`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.0.len()];
        for (pos, &p) in self.0.iter().enumerate() {
            r[p] = pos;
        }
        r
    }

    pub fn labels<'a>(&self, space: &'a UltrametricSpace) -> Vec<&'a str> {
        self.0.iter().map(|&i| space.label(i)).collect()
    }

    pub fn reversed(&self) -> PointOrder {
        PointOrder(self.0.iter().rev().copied().collect())
    }
}

/// Point indices sorted by label.
pub fn label_sequence(space: &UltrametricSpace) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..space.len()).collect();
    seq.sort_by(|&a, &b| space.label(a).cmp(space.label(b)));
    seq
}

/// Builds an admissible order by inserting points one at a time.
///
/// Each new point `p` looks at the already-placed points nearest to it,
/// takes the one that comes first in the current order, and is inserted
/// immediately before it.
pub fn admissible_order(space: &UltrametricSpace, insertion: &[usize]) -> Result<PointOrder, OrderError> {
    if !is_permutation(insertion, space.len()) {
        return Err(OrderError::InvalidSequence(space.len()));
    }
    let mut placed: Vec<usize> = Vec::with_capacity(space.len());
    for &p in insertion {
        let Some(nearest) = placed.iter().map(|&q| space.dist(p, q)).min() else {
            placed.push(p);
            continue;
        };
        let pos = placed
            .iter()
            .position(|&q| space.dist(p, q) == nearest)
            .expect("minimum is attained");
        placed.insert(pos, p);
    }
    Ok(PointOrder(placed))
}

/// [`admissible_order`] with points inserted in label order.
pub fn default_admissible_order(space: &UltrametricSpace) -> PointOrder {
    admissible_order(space, &label_sequence(space)).expect("label order is a permutation")
}

/// A rank triple `i < j < k` with `d(σ_i, σ_j) > d(σ_i, σ_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderViolation {
    pub ranks: (usize, usize, usize),
    pub points: (usize, usize, usize),
}

impl OrderViolation {
    pub fn labels<'a>(&self, space: &'a UltrametricSpace) -> (&'a str, &'a str, &'a str) {
        (
            space.label(self.points.0),
            space.label(self.points.1),
            space.label(self.points.2),
        )
    }
}

/// Exhaustive triple check; returns the lexicographically first violating
/// rank triple.
pub fn check_admissible(space: &UltrametricSpace, ord: &PointOrder) -> Result<(), OrderViolation> {
    let s = ord.indices();
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if space.dist(s[i], s[j]) > space.dist(s[i], s[k]) {
                    return Err(OrderViolation {
                        ranks: (i, j, k),
                        points: (s[i], s[j], s[k]),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_admissible(space: &UltrametricSpace, ord: &PointOrder) -> bool {
    check_admissible(space, ord).is_ok()
}

/// A point whose rank falls strictly inside the rank span of a block it
/// does not belong to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Intrusion {
    pub block: Vec<usize>,
    pub point: usize,
}

/// Every distinct block of every level of the dendrogram, with the
/// points that intrude into its rank span. Empty iff `ord` is admissible.
pub fn contiguity_violations(space: &UltrametricSpace, ord: &PointOrder) -> Vec<Intrusion> {
    let ranks = ord.ranks();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for t in space.spectrum().values().iter().skip(1) {
        for b in space.blocks(t) {
            if b.members.len() > 1 && b.members.len() < space.len() && !blocks.contains(&b.members) {
                blocks.push(b.members);
            }
        }
    }
    let mut out = Vec::new();
    for block in blocks {
        let lo = block.iter().map(|&p| ranks[p]).min().unwrap();
        let hi = block.iter().map(|&p| ranks[p]).max().unwrap();
        for &p in &ord.indices()[lo + 1..hi] {
            if !block.contains(&p) {
                out.push(Intrusion {
                    block: block.clone(),
                    point: p,
                });
            }
        }
    }
    out
}
