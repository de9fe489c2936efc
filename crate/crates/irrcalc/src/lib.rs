//! Exact computation of irregularity numbers of exponentially twisted
//! Gauss-Manin systems of pairs of polynomials in two variables.
//!
//! Given `f, g` in `Q[x,y]`, the library computes, for every place `c` of the
//! projective line, the irregularity number `IR_c` of the direct image of
//! `e^g` along `f`, by intersection numbers of discriminant cycles with the
//! line `t = infinity`, and cross-checks the result against a numeric
//! topological count on large fibers of `g`.

pub mod algebra;
pub mod analyze;
pub mod compactify;
pub mod dependent;
pub mod discriminant;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod zerodim;

pub use algebra::place::Place;
pub use algebra::poly::{MPoly, Var};



/// Rational scalar used everywhere in the exact layer.
pub type Q = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Z = num_bigint::BigInt;
