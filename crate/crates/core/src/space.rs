//! Finite ultrametric spaces as labeled distance tables.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

/// Reasons a distance table is not a valid ultrametric space.
///
/// Indices refer to rows of the input table; the `labels` fields carry the
/// corresponding point labels for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("a space needs at least one point")]
    Empty,
    #[error("distance table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("nonzero diagonal entry at `{label}`")]
    NonZeroDiagonal { index: usize, label: String },
    #[error("asymmetric distances between `{}` and `{}`", labels.0, labels.1)]
    NonSymmetric {
        i: usize,
        j: usize,
        labels: (String, String),
    },
    #[error("zero distance between distinct points `{}` and `{}`", labels.0, labels.1)]
    ZeroOffDiagonal {
        i: usize,
        j: usize,
        labels: (String, String),
    },
    #[error("strong triangle inequality fails on {0}")]
    StrongTriangleViolation(Box<TriangleWitness>),
}

/// A triple `(i, j, k)` with `d(j, k) > max(d(i, j), d(i, k))` and
/// `d(i, j) >= d(i, k)`; `long` is `d(j, k)` and `short` is `d(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub labels: (String, String, String),
    pub long: Rational,
    pub short: Rational,
}

impl fmt::Display for TriangleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = &self.labels;
        write!(
            f,
            "({a}, {b}, {c}): d({b}, {c}) = {} > max(d({a}, {b}), d({a}, {c})) = {}",
            self.long, self.short
        )
    }
}

/// A validated finite ultrametric space.
///
/// Points are identified by their row index; labels are distinct strings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UltrametricSpace {
    labels: Vec<String>,
    dist: Vec<Rational>,
}

impl UltrametricSpace {
    /// Validates a labeled distance table. On failure the first failing
    /// axiom is reported with a witness.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Rational>>) -> Result<Self, SpaceError> {
        let n = labels.len();
        if n == 0 {
            return Err(SpaceError::Empty);
        }
        if table.len() != n {
            return Err(SpaceError::NotSquare {
                row: table.len().min(n),
                len: table.get(n).map_or(0, Vec::len),
                expected: n,
            });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(SpaceError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(SpaceError::DuplicateLabel(label.clone()));
            }
        }
        let dist: Vec<Rational> = table.into_iter().flatten().collect();
        let space = UltrametricSpace { labels, dist };
        space.check_axioms()?;
        Ok(space)
    }

    /// Convenience constructor from string labels and entries.
    pub fn from_strs(labels: &[&str], table: &[&[&str]]) -> Result<Self, crate::Error> {
        let rows = table
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(labels.iter().map(|s| s.to_string()).collect(), rows)?)
    }

    pub fn one_point(label: impl Into<String>) -> Self {
        UltrametricSpace {
            labels: vec![label.into()],
            dist: vec![Rational::zero()],
        }
    }

    /// Builds a space without checking axioms. Callers guarantee validity.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, dist: Vec<Rational>) -> Self {
        debug_assert_eq!(dist.len(), labels.len() * labels.len());
        let space = UltrametricSpace { labels, dist };
        debug_assert!(space.check_axioms().is_ok(), "invalid space built internally");
        space
    }

    fn check_axioms(&self) -> Result<(), SpaceError> {
        let n = self.len();
        let pair = |i: usize, j: usize| (self.labels[i].clone(), self.labels[j].clone());
        for i in 0..n {
            if !self.dist(i, i).is_zero() {
                return Err(SpaceError::NonZeroDiagonal {
                    index: i,
                    label: self.labels[i].clone(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.dist(i, j) != self.dist(j, i) {
                    return Err(SpaceError::NonSymmetric {
                        i,
                        j,
                        labels: pair(i, j),
                    });
                }
                if self.dist(i, j).is_zero() {
                    return Err(SpaceError::ZeroOffDiagonal {
                        i,
                        j,
                        labels: pair(i, j),
                    });
                }
            }
        }
        // A triangle is ultrametric iff its two longest sides are equal; a
        // violation has a unique longest side, reported opposite the pivot.
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let sides = [(a, self.dist(b, c)), (b, self.dist(a, c)), (c, self.dist(a, b))];
                    let (pivot, long) = sides.iter().max_by(|x, y| x.1.cmp(y.1)).unwrap();
                    let others: Vec<usize> = [a, b, c].into_iter().filter(|p| p != pivot).collect();
                    let (mut j, mut k) = (others[0], others[1]);
                    if self.dist(*pivot, k) > self.dist(*pivot, j) {
                        std::mem::swap(&mut j, &mut k);
                    }
                    let short = self.dist(*pivot, j);
                    if *long > short {
                        return Err(SpaceError::StrongTriangleViolation(Box::new(TriangleWitness {
                            i: *pivot,
                            j,
                            k,
                            labels: (
                                self.labels[*pivot].clone(),
                                self.labels[j].clone(),
                                self.labels[k].clone(),
                            ),
                            long: (*long).clone(),
                            short: short.clone(),
                        })));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a space has at least one point.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    /// The distance table as nested rows.
    pub fn table(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diameter(&self) -> Rational {
        self.dist.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// All distinct distance values, including 0.
    pub fn spectrum(&self) -> Spectrum {
        let mut values = self.dist.clone();
        values.push(Rational::zero());
        values.sort();
        values.dedup();
        Spectrum(values)
    }

    /// Spectrum values `>= eps`.
    pub fn spectrum_above(&self, eps: &Rational) -> Vec<Rational> {
        self.spectrum().above(eps).to_vec()
    }

    /// Closed ball `{j : d(i, j) <= t}`, ascending indices.
    pub fn ball(&self, i: usize, t: &Rational) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.dist(i, j) <= t).collect()
    }

    /// The partition of the points into closed balls of radius `t`,
    /// ordered by smallest member index.
    pub fn blocks(&self, t: &Rational) -> Vec<Block> {
        let mut assigned = vec![false; self.len()];
        let mut blocks = Vec::new();
        for i in 0..self.len() {
            if assigned[i] {
                continue;
            }
            let members = self.ball(i, t);
            for &m in &members {
                assigned[m] = true;
            }
            blocks.push(Block {
                members,
                level: t.clone(),
            });
        }
        blocks
    }

    /// The quotient at level `t`: one point per block `[x]_t`, labeled by
    /// the lexicographically smallest member label, with the distance
    /// between distinct blocks equal to the common inter-block distance.
    pub fn quotient(&self, t: &Rational) -> UltrametricSpace {
        let blocks = self.blocks(t);
        let reps: Vec<usize> = blocks.iter().map(|b| b.members[0]).collect();
        let labels = blocks
            .iter()
            .map(|b| {
                b.members
                    .iter()
                    .map(|&m| self.labels[m].as_str())
                    .min()
                    .unwrap()
                    .to_string()
            })
            .collect();
        let mut dist = Vec::with_capacity(reps.len() * reps.len());
        for &a in &reps {
            for &b in &reps {
                dist.push(self.dist(a, b).clone());
            }
        }
        UltrametricSpace::from_parts_unchecked(labels, dist)
    }

    /// Number of blocks at level `t`, without building the quotient.
    pub fn quotient_len(&self, t: &Rational) -> usize {
        self.blocks(t).len()
    }

    /// The subspace on `indices` (in the given order) with restricted
    /// distances.
    pub fn subspace(&self, indices: &[usize]) -> UltrametricSpace {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let dist = indices
            .iter()
            .flat_map(|&i| indices.iter().map(move |&j| self.dist(i, j).clone()))
            .collect();
        UltrametricSpace::from_parts_unchecked(labels, dist)
    }

    /// The same space with points reordered by ascending label.
    pub fn sorted_by_label(&self) -> UltrametricSpace {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        self.subspace(&idx)
    }

    /// Equality up to the order in which points are listed: same label set
    /// and the same distance between every pair of labels.
    pub fn same_labeled(&self, other: &UltrametricSpace) -> bool {
        self.len() == other.len() && self.sorted_by_label() == other.sorted_by_label()
    }

    /// Returns a copy with every label replaced.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<UltrametricSpace, SpaceError> {
        UltrametricSpace::new(labels, self.table())
    }
}

impl fmt::Debug for UltrametricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                m.entry(&format_args!("{}{}", self.labels[i], self.labels[j]), self.dist(i, j));
            }
        }
        if self.len() == 1 {
            m.entry(&self.labels[0], &"point");
        }
        m.finish()
    }
}

/// Sorted distinct distance values of a space; always starts with 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum(Vec<Rational>);

impl Spectrum {
    /// Builds a spectrum from arbitrary values; 0 is always added.
    pub fn from_values(values: impl IntoIterator<Item = Rational>) -> Self {
        let mut v: Vec<Rational> = values.into_iter().collect();
        v.push(Rational::zero());
        v.sort();
        v.dedup();
        Spectrum(v)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// Values `>= eps`.
    pub fn above(&self, eps: &Rational) -> &[Rational] {
        let start = self.0.partition_point(|v| v < eps);
        &self.0[start..]
    }

    pub fn is_subset_of(&self, other: &Spectrum) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// Largest value, i.e. the diameter of the underlying space.
    pub fn max(&self) -> &Rational {
        self.0.last().expect("spectrum always contains 0")
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One closed ball `[x]_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub members: Vec<usize>,
    pub level: Rational,
}
