//! Exact Gromov-Hausdorff ultrametric between finite ultrametric spaces.
//!
//! `u_GH(X, Y)` is the least level `t >= 0` at which the quotients `X_t`
//! and `Y_t` are isometric. The isometry type of `X_t` only changes at
//! values of `spec(X)` (balls are closed), so the minimum is attained on
//! the candidate set `{0} ∪ spec(X) ∪ spec(Y)`. The predicate
//! `t ↦ X_t ≅ Y_t` is monotone because `(X_t)_s ≅ X_max(s,t)`, which is
//! what makes the binary search valid.

use serde::Serialize;

use crate::canon::{canonical_signature, CanonicalSignature};
use crate::rational::Rational;
use crate::space::UltrametricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhResult {
    pub value: Rational,
    /// The minimizing level; equal to `value`.
    pub witness_level: Rational,
    /// Signature shared by both quotients at the witness level.
    pub witness_signature: CanonicalSignature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    Binary,
    /// Exhaustive scan over every candidate level. Kept for cross-checking.
    Scan,
}

/// `{0} ∪ spec(X) ∪ spec(Y)`, ascending.
pub fn candidate_levels(x: &UltrametricSpace, y: &UltrametricSpace) -> Vec<Rational> {
    let mut levels: Vec<Rational> = x
        .spectrum()
        .values()
        .iter()
        .chain(y.spectrum().values())
        .cloned()
        .collect();
    levels.sort();
    levels.dedup();
    levels
}

/// The common signature of `X_t` and `Y_t` if they are isometric.
pub fn quotients_match(x: &UltrametricSpace, y: &UltrametricSpace, t: &Rational) -> Option<CanonicalSignature> {
    if x.quotient_len(t) != y.quotient_len(t) {
        return None;
    }
    let sx = canonical_signature(&x.quotient(t));
    let sy = canonical_signature(&y.quotient(t));
    (sx == sy).then_some(sx)
}

pub fn ugh(x: &UltrametricSpace, y: &UltrametricSpace) -> GhResult {
    ugh_with(x, y, SearchMode::Binary)
}

pub fn ugh_with(x: &UltrametricSpace, y: &UltrametricSpace, mode: SearchMode) -> GhResult {
    let levels = candidate_levels(x, y);
    let (level, signature) = match mode {
        SearchMode::Scan => levels
            .iter()
            .find_map(|t| quotients_match(x, y, t).map(|s| (t.clone(), s)))
            .expect("quotients agree at the largest diameter"),
        SearchMode::Binary => {
            // Invariant: predicate false below `lo`, true at `hi`.
            let mut lo = 0;
            let mut hi = levels.len() - 1;
            let mut best = quotients_match(x, y, &levels[hi]).expect("quotients agree at the largest diameter");
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                match quotients_match(x, y, &levels[mid]) {
                    Some(sig) => {
                        hi = mid;
                        best = sig;
                    }
                    None => lo = mid + 1,
                }
            }
            (levels[hi].clone(), best)
        }
    };
    GhResult {
        value: level.clone(),
        witness_level: level,
        witness_signature: signature,
    }
}

/// Largest element of the symmetric difference of the two spectra, or 0
/// when the spectra coincide. Never exceeds `ugh(x, y).value`.
///
/// The spectra agree above this value; they agree at it only when the
/// symmetric difference is empty.
pub fn spec_lower_bound(x: &UltrametricSpace, y: &UltrametricSpace) -> Rational {
    let sx = x.spectrum();
    let sy = y.spectrum();
    let only_x = sx.values().iter().filter(|v| !sy.contains(v));
    let only_y = sy.values().iter().filter(|v| !sx.contains(v));
    only_x.chain(only_y).max().cloned().unwrap_or_else(Rational::zero)
}
