//! Importing a linkage table from a clustering pipeline.

use ultragh::io::{parse_linkage, parse_linkage_csv, space_to_json};
use ultragh::{canonical_signature, dendrogram_of};

const ROWS: &str = "\
# left,right,height,size
0,1,0.5,2
2,3,0.5,2
4,5,1.25,4
";

fn main() -> Result<(), ultragh::Error> {
    let rows = parse_linkage_csv(ROWS)?;
    let dendro = parse_linkage(&rows, &["ant", "bee", "cat", "dog"])?;
    println!("tree: {dendro}");
    let x = dendro.to_space();
    println!("signature: {}", canonical_signature(&x));
    println!("rebuilt tree: {}", dendrogram_of(&x));
    print!("{}", space_to_json(&x));
    Ok(())
}
