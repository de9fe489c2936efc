//! Exact rational arithmetic and sparse multivariate polynomial algebra.

pub mod gcd;
pub mod interp;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod resultant;
pub mod squarefree;
pub mod uroots;

pub use gcd::{content_wrt, exact_div, gcd_poly, primitive_part_wrt};
pub use place::{order_at_place, Place};
pub use poly::{MPoly, Mono, Var, NVARS};
pub use resultant::resultant;
pub use squarefree::{squarefree, SquarefreeDecomposition};
