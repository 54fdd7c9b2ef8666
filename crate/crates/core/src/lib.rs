//! Exact computations with closed 2-dimensional orbifolds.
//!
//! * [`signature`]: symbolic signatures, their text grammar and mirror doubling.
//! * [`euler`]: the orbifold Euler characteristic three ways, plus
//!   stratified cell complexes.
//! * [`fundamental`]: orbifold fundamental group presentations, coset
//!   enumeration and the good/bad and geometry classification.
//! * [`quotient`]: quotients of triangulated surfaces by finite simplicial
//!   group actions.
//! * [`covering`]: verification of claimed orbifold coverings.
//! * [`wps`]: stratification of weighted projective spaces.
//! * [`geometry`]: Gauss–Bonnet quadrature and Poincaré–Hopf checks.

pub mod covering;
pub mod euler;
pub mod fixtures;
pub mod fundamental;
pub mod geometry;
pub mod quotient;
pub mod rational;
pub mod signature;
pub mod wps;

pub use rational::Rational;
pub use signature::{parse_signature, Signature};
