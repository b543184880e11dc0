//! Exact bases for derivation modules of rank-2 multiarrangements.
//!
//! - [`poly`]: homogeneous bivariate polynomials over the rationals
//! - [`arrangement`]: multiarrangements, derivations, membership, Saito's criterion
//! - [`oracle`]: brute-force graded pieces, exponents and bases by exact linear algebra
//! - [`closedform`]: the explicit B2 derivations `θ_m` and the bases built from them
//! - [`a2`]: lower derivations for the A2 multiarrangement `{x, y, x+y}`
//! - [`cli`]: command-line front end, JSON and LaTeX rendering

pub mod a2;
pub mod arrangement;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod render;

pub use arrangement::{Derivation, ExponentPair, Multiarrangement, Multiplicity};
pub use error::{Error, Result};
pub use poly::{HomoPoly, LinearForm, Rational};
