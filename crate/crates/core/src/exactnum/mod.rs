//! Exact number systems and polynomial algebra.

pub mod grat;
pub mod json;
pub mod linalg;
pub mod mpoly;
pub mod rat;
pub mod ratfn;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod surd;
pub mod upoly;

pub use grat::GRat;
pub use linalg::Mat;
pub use mpoly::MPoly;
pub use rat::{fmt_rat, int, parse_rat, rat, Rat};
pub use ratfn::RatFn;
pub use resultant::resultant;
pub use roots::{grat_sqrt, upoly_rational_roots, RootSplit};
pub use scalar::Scalar;
pub use surd::{surd_normalize, QuadNum, Surd};
pub use upoly::UPoly;
