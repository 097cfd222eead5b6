//! Each point goes to the subspace of the points up to it in an
//! admissible order; the map preserves distances exactly.

use ultragh::embed::embed_finite;
use ultragh::gen::{random_space, GenConfig};
use ultragh::order::default_admissible_order;
use ultragh::Rational;

fn main() -> Result<(), ultragh::Error> {
    let heights = (1..=4).map(Rational::from_integer).collect();
    let x = random_space(&GenConfig::new(6, heights, 2, 3)?);
    let ord = default_admissible_order(&x);
    let family = embed_finite(&x, &ord)?;

    for (label, image) in x.labels().iter().zip(family.images()) {
        println!("{label} -> {} points, spectrum {}", image.len(), image.spectrum());
    }
    let report = family.verify();
    println!("{} pairs checked, all exact: {}", report.pairs.len(), report.passed());
    Ok(())
}
