//! Gromov-Hausdorff ultrametric between two small spaces, with the
//! quotients that witness it.

use ultragh::ghdist::{candidate_levels, spec_lower_bound, ugh};
use ultragh::{canonical_signature, UltrametricSpace};

fn main() -> Result<(), ultragh::Error> {
    let x = UltrametricSpace::from_strs(
        &["a", "b", "c"],
        &[&["0", "1", "2"], &["1", "0", "2"], &["2", "2", "0"]],
    )?;
    let y = UltrametricSpace::from_strs(&["p", "q"], &[&["0", "2"], &["2", "0"]])?;

    for t in candidate_levels(&x, &y) {
        println!(
            "t = {t}: {} vs {}",
            canonical_signature(&x.quotient(&t)),
            canonical_signature(&y.quotient(&t))
        );
    }
    let r = ugh(&x, &y);
    println!(
        "u_GH = {} (quotients agree from level {} as {})",
        r.value, r.witness_level, r.witness_signature
    );
    println!("spectral lower bound = {}", spec_lower_bound(&x, &y));
    Ok(())
}
