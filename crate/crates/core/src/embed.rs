//! Isometric embeddings of finite ultrametric spaces into the space of
//! all compact ultrametric spaces under `u_GH`.
//!
//! An embedding is represented as a [`SpaceFamily`]: one image space per
//! source point, such that `ugh(image_i, image_j) = d(x_i, x_j)`.
//!
//! Two constructions are provided:
//!
//! * [`embed_finite`] maps the `i`-th point of an admissible order to the
//!   prefix subspace of the first `i + 1` points;
//! * [`one_point_extension`] extends an existing embedding by one point,
//!   and [`extend_embedding`] iterates it to extend a partial embedding to
//!   a whole space.

use serde::Serialize;
use thiserror::Error;

use crate::canon::canonical_signature;
use crate::ghdist::ugh;
use crate::order::{check_admissible, label_sequence, OrderViolation, PointOrder};
use crate::rational::Rational;
use crate::space::{SpaceError, Spectrum, UltrametricSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("order is not admissible: ({}, {}, {})", labels.0, labels.1, labels.2)]
    NotAdmissible {
        violation: OrderViolation,
        labels: Box<(String, String, String)>,
    },
    #[error("new point is inconsistent with the base space: {0}")]
    InconsistentDistances(#[source] SpaceError),
    #[error("base family is not an isometric embedding ({} mismatched pairs)", .0.len())]
    BaseNotIsometric(Vec<PairCheck>),
    #[error("the embedded subset must be nonempty")]
    EmptyA,
    #[error("subset indices must be distinct and below {0}")]
    InvalidSubset(usize),
}

/// The images of the points of `source`, in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFamily {
    source: UltrametricSpace,
    images: Vec<UltrametricSpace>,
}

impl SpaceFamily {
    pub fn new(source: UltrametricSpace, images: Vec<UltrametricSpace>) -> Result<Self, EmbedError> {
        if images.len() != source.len() {
            return Err(EmbedError::LengthMismatch {
                expected: source.len(),
                got: images.len(),
            });
        }
        Ok(SpaceFamily { source, images })
    }

    pub fn source(&self) -> &UltrametricSpace {
        &self.source
    }

    pub fn images(&self) -> &[UltrametricSpace] {
        &self.images
    }

    pub fn image_of(&self, label: &str) -> Option<&UltrametricSpace> {
        self.source.index_of(label).map(|i| &self.images[i])
    }

    pub fn into_parts(self) -> (UltrametricSpace, Vec<UltrametricSpace>) {
        (self.source, self.images)
    }

    pub fn verify(&self) -> EmbeddingReport {
        verify_images(&self.source, &self.images)
    }
}

/// One pair of source points and the `u_GH` between their images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub expected: Rational,
    pub actual: Rational,
}

impl PairCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub pairs: Vec<PairCheck>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(PairCheck::ok)
    }

    pub fn failures(&self) -> Vec<PairCheck> {
        self.pairs.iter().filter(|p| !p.ok()).cloned().collect()
    }
}

/// Recomputes `u_GH` between all pairs of images and compares against
/// the source distances.
pub fn verify_embedding(space: &UltrametricSpace, images: &[UltrametricSpace]) -> Result<EmbeddingReport, EmbedError> {
    if images.len() != space.len() {
        return Err(EmbedError::LengthMismatch {
            expected: space.len(),
            got: images.len(),
        });
    }
    Ok(verify_images(space, images))
}

fn verify_images(space: &UltrametricSpace, images: &[UltrametricSpace]) -> EmbeddingReport {
    let mut pairs = Vec::new();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            pairs.push(PairCheck {
                i,
                j,
                expected: space.dist(i, j).clone(),
                actual: ugh(&images[i], &images[j]).value,
            });
        }
    }
    EmbeddingReport { pairs }
}

/// Maps the point at rank `i` of an admissible order to the subspace of
/// the points at ranks `0..=i`. Images are returned in source point order.
pub fn embed_finite(space: &UltrametricSpace, ord: &PointOrder) -> Result<SpaceFamily, EmbedError> {
    if ord.len() != space.len() {
        return Err(EmbedError::LengthMismatch {
            expected: space.len(),
            got: ord.len(),
        });
    }
    check_admissible(space, ord).map_err(|violation| {
        let (a, b, c) = violation.labels(space);
        let labels = Box::new((a.to_string(), b.to_string(), c.to_string()));
        EmbedError::NotAdmissible { violation, labels }
    })?;
    let seq = ord.indices();
    let mut images = vec![None; space.len()];
    for (rank, &point) in seq.iter().enumerate() {
        images[point] = Some(space.subspace(&seq[..=rank]));
    }
    SpaceFamily::new(space.clone(), images.into_iter().map(Option::unwrap).collect())
}

/// An embedded base space plus one new point, given by its distances to
/// the base points (in base order).
#[derive(Debug, Clone)]
pub struct ExtensionInput {
    pub base: SpaceFamily,
    pub label: String,
    pub distances: Vec<Rational>,
}

/// The image of the new point together with the intermediate quantities
/// of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub image: UltrametricSpace,
    /// Smallest distance from the new point to the base.
    pub delta: Rational,
    /// Base indices attaining `delta`.
    pub nearest: Vec<usize>,
    /// The common quotient of the nearest images at level `delta`.
    pub core: UltrametricSpace,
    /// Label of the point of `core` the fresh points attach to.
    pub basepoint: String,
    /// Number of fresh points added, one more than the largest quotient
    /// size at level `delta / 2`.
    pub fresh: usize,
    /// The base source space extended by the new point.
    pub source: UltrametricSpace,
}

impl Extension {
    /// The base family with the new image appended.
    pub fn into_family(self, base: &SpaceFamily) -> SpaceFamily {
        let mut images = base.images().to_vec();
        images.push(self.image);
        SpaceFamily::new(self.source, images).expect("one image per point")
    }
}

/// Extends an isometric embedding by one point.
///
/// With `δ` the distance from the new point to its nearest base points
/// `M`, the new image is `Z ∪ {*1, ..., *(N+1)}` where `Z` is the quotient
/// at level `δ` of any image in `M` and `N` is the largest quotient size
/// at level `δ/2` among those images. The fresh points are pairwise `δ`
/// apart and `δ` from the basepoint `z*` (smallest label of `Z`); every
/// other `z` is `d_Z(z*, z)` away from them.
pub fn one_point_extension(input: &ExtensionInput) -> Result<Extension, EmbedError> {
    let failures = input.base.verify().failures();
    if !failures.is_empty() {
        return Err(EmbedError::BaseNotIsometric(failures));
    }
    extend_verified(input)
}

fn extend_verified(input: &ExtensionInput) -> Result<Extension, EmbedError> {
    let base = input.base.source();
    if input.distances.len() != base.len() {
        return Err(EmbedError::LengthMismatch {
            expected: base.len(),
            got: input.distances.len(),
        });
    }
    let source = extended_source(base, &input.label, &input.distances)?;

    let delta = input.distances.iter().min().expect("base is nonempty").clone();
    let nearest: Vec<usize> = (0..base.len()).filter(|&i| input.distances[i] == delta).collect();
    let images = input.base.images();

    let core = images[nearest[0]].quotient(&delta);
    let core_sig = canonical_signature(&core);
    for &k in &nearest[1..] {
        if canonical_signature(&images[k].quotient(&delta)) != core_sig {
            return Err(EmbedError::BaseNotIsometric(vec![PairCheck {
                i: nearest[0],
                j: k,
                expected: base.dist(nearest[0], k).clone(),
                actual: ugh(&images[nearest[0]], &images[k]).value,
            }]));
        }
    }
    let half = &delta / 2;
    let max_half = nearest.iter().map(|&k| images[k].quotient_len(&half)).max().unwrap();
    let fresh = max_half + 1;

    let z_len = core.len();
    let star = (0..z_len)
        .min_by(|&a, &b| core.label(a).cmp(core.label(b)))
        .expect("core is nonempty");
    let basepoint = core.label(star).to_string();

    let mut labels: Vec<String> = core.labels().to_vec();
    for i in 1..=fresh {
        let mut name = format!("*{i}");
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }

    let total = z_len + fresh;
    let mut dist = vec![Rational::zero(); total * total];
    for a in 0..z_len {
        for b in 0..z_len {
            dist[a * total + b] = core.dist(a, b).clone();
        }
        let to_fresh = if a == star {
            delta.clone()
        } else {
            core.dist(star, a).clone()
        };
        for f in z_len..total {
            dist[a * total + f] = to_fresh.clone();
            dist[f * total + a] = to_fresh.clone();
        }
    }
    for f in z_len..total {
        for g in z_len..total {
            if f != g {
                dist[f * total + g] = delta.clone();
            }
        }
    }
    let image = UltrametricSpace::from_parts_unchecked(labels, dist);

    Ok(Extension {
        image,
        delta,
        nearest,
        core,
        basepoint,
        fresh,
        source,
    })
}

fn extended_source(
    base: &UltrametricSpace,
    label: &str,
    distances: &[Rational],
) -> Result<UltrametricSpace, EmbedError> {
    let mut labels = base.labels().to_vec();
    labels.push(label.to_string());
    let mut table = base.table();
    for (row, d) in table.iter_mut().zip(distances) {
        row.push(d.clone());
    }
    let mut last = distances.to_vec();
    last.push(Rational::zero());
    table.push(last);
    UltrametricSpace::new(labels, table).map_err(EmbedError::InconsistentDistances)
}

/// Extends an embedding of the subspace on `subset` to all of `space`,
/// adding the missing points in ascending label order. `images[i]` is the
/// image of `space` point `subset[i]`. The result is in `space` order.
pub fn extend_embedding(
    space: &UltrametricSpace,
    subset: &[usize],
    images: &[UltrametricSpace],
) -> Result<SpaceFamily, EmbedError> {
    if subset.is_empty() {
        return Err(EmbedError::EmptyA);
    }
    let n = space.len();
    let mut in_subset = vec![false; n];
    for &i in subset {
        if i >= n || std::mem::replace(&mut in_subset[i], true) {
            return Err(EmbedError::InvalidSubset(n));
        }
    }
    let mut family = SpaceFamily::new(space.subspace(subset), images.to_vec())?;
    let failures = family.verify().failures();
    if !failures.is_empty() {
        return Err(EmbedError::BaseNotIsometric(failures));
    }

    let mut placed = subset.to_vec();
    for p in label_sequence(space).into_iter().filter(|&p| !in_subset[p]) {
        let input = ExtensionInput {
            distances: placed.iter().map(|&q| space.dist(p, q).clone()).collect(),
            label: space.label(p).to_string(),
            base: family,
        };
        let ext = extend_verified(&input)?;
        family = ext.into_family(&input.base);
        placed.push(p);
    }

    let mut ordered = vec![None; n];
    for (img, &p) in family.images.into_iter().zip(&placed) {
        ordered[p] = Some(img);
    }
    let result = SpaceFamily::new(space.clone(), ordered.into_iter().map(Option::unwrap).collect())?;
    let failures = result.verify().failures();
    if !failures.is_empty() {
        return Err(EmbedError::BaseNotIsometric(failures));
    }
    Ok(result)
}

/// Embeds a whole space by extension, seeding the label-smallest point
/// with the one-point space.
pub fn embed_by_extension(space: &UltrametricSpace) -> SpaceFamily {
    let seed = label_sequence(space)[0];
    extend_embedding(space, &[seed], &[UltrametricSpace::one_point("*")])
        .expect("one-point seed is always a valid partial embedding")
}

/// True iff every image has its spectrum inside `allowed`.
pub fn images_within(images: &[UltrametricSpace], allowed: &Spectrum) -> bool {
    images.iter().all(|img| img.spectrum().is_subset_of(allowed))
}
