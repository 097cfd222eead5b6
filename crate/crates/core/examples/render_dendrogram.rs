//! Drawing a dendrogram in an admissible and a non-admissible order.

use ultragh::io::{render, RenderFormat};
use ultragh::order::default_admissible_order;
use ultragh::{dendrogram_of, UltrametricSpace};

fn main() -> Result<(), ultragh::Error> {
    let x = UltrametricSpace::from_strs(
        &["a", "b", "c", "d"],
        &[
            &["0", "1", "3", "3"],
            &["1", "0", "3", "3"],
            &["3", "3", "0", "2"],
            &["3", "3", "2", "0"],
        ],
    )?;
    let tree = dendrogram_of(&x);
    let good = default_admissible_order(&x);
    print!("{}", render(&tree, &good.labels(&x), RenderFormat::Ascii)?);
    println!();
    print!("{}", render(&tree, &["a", "c", "b", "d"], RenderFormat::Ascii)?);
    println!();
    let svg = render(&tree, &good.labels(&x), RenderFormat::Svg)?;
    println!("svg: {} bytes, first lines:", svg.len());
    for line in svg.lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
