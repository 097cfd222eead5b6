//! Seeded generation of random dendrograms and ultrametric spaces.
//!
//! The generator is `ChaCha8Rng` from `rand_chacha` 0.9, seeded with
//! `seed_from_u64`; output for a given config is stable across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dendrogram::{ultrametric_of, Dendrogram};
use crate::rational::Rational;
use crate::space::UltrametricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("cannot build {0} points without any merge height")]
    ImpossibleConfig(usize),
    #[error("n must be at least 1")]
    NoPoints,
    #[error("max arity must be at least 2")]
    BadArity,
    #[error("merge heights must be positive")]
    NonPositiveHeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    n: usize,
    heights: Vec<Rational>,
    seed: u64,
    max_arity: usize,
}

impl GenConfig {
    /// Heights are sorted and deduplicated.
    pub fn new(n: usize, heights: Vec<Rational>, seed: u64, max_arity: usize) -> Result<Self, GenError> {
        if n == 0 {
            return Err(GenError::NoPoints);
        }
        if max_arity < 2 {
            return Err(GenError::BadArity);
        }
        if heights.iter().any(Rational::is_zero) {
            return Err(GenError::NonPositiveHeight);
        }
        if n >= 2 && heights.is_empty() {
            return Err(GenError::ImpossibleConfig(n));
        }
        let mut heights = heights;
        heights.sort();
        heights.dedup();
        Ok(GenConfig {
            n,
            heights,
            seed,
            max_arity,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }
}

/// Leaf label for point `i`.
pub fn point_label(i: usize) -> String {
    format!("x{i}")
}

/// Builds a random merge tree top-down.
///
/// The root takes a random height from the configured set; each merge
/// splits its leaves into 2 to `max_arity` nonempty groups, and every
/// group of two or more leaves takes a strictly smaller height. A merge
/// at the smallest available height has nowhere lower to go and splits
/// into singletons, which may exceed `max_arity`.
pub fn random_dendrogram(cfg: &GenConfig) -> Dendrogram {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut leaves: Vec<usize> = (0..cfg.n).collect();
    leaves.shuffle(&mut rng);
    if cfg.n == 1 {
        return Dendrogram::leaf(point_label(0));
    }
    let top = rng.random_range(0..cfg.heights.len());
    grow(cfg, &mut rng, &leaves, top)
}

fn grow(cfg: &GenConfig, rng: &mut ChaCha8Rng, leaves: &[usize], level: usize) -> Dendrogram {
    if leaves.len() == 1 {
        return Dendrogram::leaf(point_label(leaves[0]));
    }
    let height = cfg.heights[level].clone();
    if level == 0 {
        let children = leaves.iter().map(|&i| Dendrogram::leaf(point_label(i))).collect();
        return Dendrogram::Merge { height, children };
    }
    let arity = rng.random_range(2..=cfg.max_arity.min(leaves.len()));
    // choose arity - 1 distinct cut points in 1..len
    let mut cuts: Vec<usize> = (1..leaves.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(arity - 1);
    cuts.sort_unstable();
    let mut children = Vec::with_capacity(arity);
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(leaves.len())) {
        let group = &leaves[start..end];
        let child_level = if group.len() > 1 { rng.random_range(0..level) } else { 0 };
        children.push(grow(cfg, rng, group, child_level));
        start = end;
    }
    Dendrogram::Merge { height, children }
}

/// The ultrametric space of [`random_dendrogram`].
pub fn random_space(cfg: &GenConfig) -> UltrametricSpace {
    ultrametric_of(&random_dendrogram(cfg))
}

/// Seeded relabeling: point `i` of the result is point `π(i)` of the
/// input, while the label list keeps its original order. The result is
/// isometric to the input.
pub fn permute_labels(space: &UltrametricSpace, seed: u64) -> UltrametricSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..space.len()).collect();
    perm.shuffle(&mut rng);
    let moved = space.subspace(&perm);
    moved
        .with_labels(space.labels().to_vec())
        .expect("relabeling keeps the space valid")
}

/// A seeded random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_signature, is_isometric};
    use crate::ghdist::ugh;
    use crate::space::Spectrum;

    fn heights(vals: &[u64]) -> Vec<Rational> {
        vals.iter().map(|&v| Rational::from_integer(v)).collect()
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = GenConfig::new(7, heights(&[1, 2, 3]), 42, 3).unwrap();
        assert_eq!(random_dendrogram(&cfg), random_dendrogram(&cfg));
        assert_eq!(random_dendrogram(&cfg).to_string(), random_dendrogram(&cfg).to_string());
    }

    #[test]
    fn single_point() {
        let cfg = GenConfig::new(1, vec![], 9, 2).unwrap();
        assert_eq!(random_dendrogram(&cfg), Dendrogram::leaf("x0"));
    }

    #[test]
    fn config_errors() {
        assert_eq!(GenConfig::new(2, vec![], 0, 2), Err(GenError::ImpossibleConfig(2)));
        assert_eq!(GenConfig::new(0, heights(&[1]), 0, 2), Err(GenError::NoPoints));
        assert_eq!(GenConfig::new(3, heights(&[1]), 0, 1), Err(GenError::BadArity));
        assert_eq!(
            GenConfig::new(3, heights(&[0, 1]), 0, 2),
            Err(GenError::NonPositiveHeight)
        );
        let cfg = GenConfig::new(3, heights(&[3, 1, 3]), 0, 2).unwrap();
        assert_eq!(cfg.heights(), &heights(&[1, 3])[..]);
    }

    #[test]
    fn outputs_are_valid_and_use_declared_heights() {
        for seed in 0..200 {
            let cfg = GenConfig::new(
                1 + (seed as usize % 9),
                heights(&[1, 2, 5]),
                seed,
                2 + seed as usize % 3,
            )
            .unwrap();
            let d = random_dendrogram(&cfg);
            d.validate().unwrap();
            assert_eq!(d.leaf_count(), cfg.n());
            let x = ultrametric_of(&d);
            UltrametricSpace::new(x.labels().to_vec(), x.table()).unwrap();
            assert!(x
                .spectrum()
                .is_subset_of(&Spectrum::from_values(cfg.heights().to_vec())));
        }
    }

    #[test]
    fn several_shapes_occur() {
        let mut sigs = std::collections::HashSet::new();
        for seed in 0..1000 {
            let cfg = GenConfig::new(6, heights(&[1, 2, 3]), seed, 3).unwrap();
            sigs.insert(canonical_signature(&random_space(&cfg)));
        }
        assert!(sigs.len() >= 2, "only {} signatures", sigs.len());
    }

    #[test]
    fn permutation_is_isometry() {
        let cfg = GenConfig::new(6, heights(&[1, 2, 3]), 5, 3).unwrap();
        let x = random_space(&cfg);
        for seed in 0..20 {
            let y = permute_labels(&x, seed);
            assert!(is_isometric(&x, &y));
            assert!(ugh(&x, &y).value.is_zero());
            assert_eq!(y.labels(), x.labels());
        }
        let one = UltrametricSpace::one_point("a");
        assert_eq!(permute_labels(&one, 3), one);
    }
}
