//! Exact truncated power series for Apostol-type poly-Genocchi polynomials
//! and their Bernoulli, Frobenius and Stirling relatives, with a verifier that
//! checks polynomial identities coefficient by coefficient.

pub mod combinatorics;
pub mod error;
pub mod families;
pub mod kernels;
pub mod rational;
pub mod series;
pub mod verifier;

pub use error::{Error, Result};
pub use kernels::ParamPoint;
pub use rational::Rational;
pub use series::{BiSeries, Poly, PolySeries};
