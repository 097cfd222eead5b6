//! Label-free signatures decide isometry.

use ultragh::gen::{permute_labels, random_space, GenConfig};
use ultragh::{canonical_signature, is_isometric, Rational};

fn main() -> Result<(), ultragh::Error> {
    let heights: Vec<Rational> = ["1/2", "1", "3"].iter().map(|h| h.parse()).collect::<Result<_, _>>()?;
    let x = random_space(&GenConfig::new(6, heights.clone(), 5, 3)?);
    let shuffled = permute_labels(&x, 99);
    let other = random_space(&GenConfig::new(6, heights, 6, 3)?);

    println!("x        {}", canonical_signature(&x));
    println!("shuffled {}", canonical_signature(&shuffled));
    println!("other    {}", canonical_signature(&other));
    println!("x ~ shuffled: {}", is_isometric(&x, &shuffled));
    println!("x ~ other:    {}", is_isometric(&x, &other));
    Ok(())
}
