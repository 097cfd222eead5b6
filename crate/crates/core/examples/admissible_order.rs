//! Building admissible orders by insertion and diagnosing bad ones.

use ultragh::order::{admissible_order, check_admissible, contiguity_violations, default_admissible_order};
use ultragh::{PointOrder, UltrametricSpace};

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
    println!("default order: {:?}", default_admissible_order(&x).labels(&x));
    let from_d = admissible_order(&x, &[3, 2, 1, 0])?;
    println!("inserting d, c, b, a: {:?}", from_d.labels(&x));

    let bad = PointOrder::from_labels(&x, &["a", "c", "b", "d"])?;
    if let Err(v) = check_admissible(&x, &bad) {
        println!("a,c,b,d fails on {:?} at ranks {:?}", v.labels(&x), v.ranks);
    }
    for intrusion in contiguity_violations(&x, &bad) {
        let block: Vec<&str> = intrusion.block.iter().map(|&i| x.label(i)).collect();
        println!("  {} sits inside block {block:?}", x.label(intrusion.point));
    }
    Ok(())
}
