//! Seeded random generation.

use ultragh::gen::{random_dendrogram, GenConfig};
use ultragh::{canonical_signature, ultrametric_of, Rational};

fn main() -> Result<(), ultragh::Error> {
    let heights: Vec<Rational> = ["1/2", "3/2", "5/2"]
        .iter()
        .map(|h| h.parse())
        .collect::<Result<_, _>>()?;
    for seed in 0..5 {
        let cfg = GenConfig::new(7, heights.clone(), seed, 3)?;
        let tree = random_dendrogram(&cfg);
        println!("seed {seed}: {}", canonical_signature(&ultrametric_of(&tree)));
    }
    Ok(())
}
