/*!
Exact computations on finite ultrametric spaces.

The crate works with two equivalent representations of a finite
ultrametric space: a labeled distance table ([`UltrametricSpace`]) and a
merge tree ([`Dendrogram`]). On top of these it provides

* the quotient operator and spectra ([`space`]);
* canonical signatures and isometry testing ([`canon`]);
* the Gromov-Hausdorff ultrametric `u_GH` and its spectral lower bound
  ([`ghdist`]);
* admissible orders and the crossing-free drawing criterion ([`order`]);
* isometric embeddings of finite spaces into the space of compact
  ultrametric spaces, including one-point extension ([`embed`]);
* seeded random generation ([`gen`]), file formats and drawings ([`io`]),
  and the `ultragh` command line front end ([`cli`]).

All distances are exact rationals ([`Rational`]); nothing goes through
floating point.

```
use ultragh::{ghdist::ugh, UltrametricSpace};

let x = UltrametricSpace::from_strs(
    &["a", "b", "c"],
    &[&["0", "1", "2"], &["1", "0", "2"], &["2", "2", "0"]],
)?;
let y = UltrametricSpace::from_strs(&["p", "q"], &[&["0", "2"], &["2", "0"]])?;
let r = ugh(&x, &y);
assert_eq!(r.value.to_string(), "1");
assert_eq!(r.witness_signature.as_str(), "(2;L,L)");
# Ok::<(), ultragh::Error>(())
```
*/

pub mod canon;
pub mod cli;
pub mod dendrogram;
pub mod embed;
pub mod gen;
pub mod ghdist;
pub mod io;
pub mod order;
pub mod rational;
pub mod space;

pub use canon::{canonical_signature, is_isometric, CanonicalSignature};
pub use dendrogram::{dendrogram_of, ultrametric_of, Dendrogram};
pub use embed::SpaceFamily;
pub use ghdist::{spec_lower_bound, ugh, GhResult};
pub use order::PointOrder;
pub use rational::Rational;
pub use space::{Spectrum, UltrametricSpace};

/// Crate-wide error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Number(#[from] rational::ParseRationalError),
    #[error(transparent)]
    Space(#[from] space::SpaceError),
    #[error(transparent)]
    Dendrogram(#[from] dendrogram::DendrogramError),
    #[error(transparent)]
    Order(#[from] order::OrderError),
    #[error(transparent)]
    Embed(#[from] embed::EmbedError),
    #[error(transparent)]
    Gen(#[from] gen::GenError),
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error(transparent)]
    Linkage(#[from] io::LinkageError),
    #[error(transparent)]
    Render(#[from] io::RenderError),
}
