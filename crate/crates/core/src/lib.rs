pub mod cat_o;
pub mod error;
pub mod halfint;
pub mod klengine;
pub mod liedata;
pub mod poly;
pub mod polymatrix;
pub mod report;
pub mod sparse;
pub mod weights;
pub mod weylgroup;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use liedata::{LieType, RankSpec, RootDatum};
pub use poly::LaurentPoly;
pub use polymatrix::PolyMatrix;
pub use weights::{ParabolicSpec, Weight};
pub use weylgroup::WeylElt;
