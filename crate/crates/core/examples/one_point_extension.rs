//! Extending an embedding one point at a time.

use ultragh::embed::{embed_by_extension, embed_finite, one_point_extension, ExtensionInput};
use ultragh::ghdist::ugh;
use ultragh::order::default_admissible_order;
use ultragh::UltrametricSpace;

fn main() -> Result<(), ultragh::Error> {
    let base_space = UltrametricSpace::from_strs(&["x1", "x2"], &[&["0", "2"], &["2", "0"]])?;
    let base = embed_finite(&base_space, &default_admissible_order(&base_space))?;
    let input = ExtensionInput {
        base: base.clone(),
        label: "x3".into(),
        distances: vec!["1".parse()?, "2".parse()?],
    };
    let ext = one_point_extension(&input)?;
    println!(
        "delta = {}, nearest = {:?}, core has {} points, {} fresh points",
        ext.delta,
        ext.nearest,
        ext.core.len(),
        ext.fresh
    );
    println!("new image: {:?}", ext.image);
    for (label, img) in base.source().labels().iter().zip(base.images()) {
        println!("  u_GH to image of {label} = {}", ugh(&ext.image, img).value);
    }

    let x = UltrametricSpace::from_strs(
        &["a", "b", "c"],
        &[&["0", "1", "2"], &["1", "0", "2"], &["2", "2", "0"]],
    )?;
    let family = embed_by_extension(&x);
    println!(
        "seeded from a point: {} images, verified {}",
        family.images().len(),
        family.verify().passed()
    );
    Ok(())
}
